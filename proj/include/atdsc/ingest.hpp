#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atdsc/graph.hpp"
#include "atdsc/types.hpp"

namespace atdsc {

struct RejectionReport {
  long malformed_rows = 0;
  long unknown_zones = 0;
  long nonpositive_durations = 0;

  long total() const { return malformed_rows + unknown_zones + nonpositive_durations; }
};

// Expected header, in order.
extern const char* const kTripCsvHeader;

// Reads header-first CSV trip records; rows violating the record invariants
// are skipped and counted. An unreadable stream is fatal.
std::vector<TripRecord> parse_trip_records(std::istream& in, const ZoneGraph& graph,
                                           RejectionReport& report);

void write_trip_records(const std::vector<TripRecord>& records, std::ostream& out);

struct PairStats {
  long n = 0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(double x) { ++n; sum += x; sumsq += x * x; }
  double mean() const { return n > 0 ? sum / n : 0.0; }
  double stddev() const;
};

struct ZoneBucketStats {
  long pickup_count = 0;
  double total_payment = 0.0;
  double total_delivery_minutes = 0.0;
  std::map<ZoneId, long> dropoff_counts;

  bool has_income() const { return total_delivery_minutes > 0.0; }
  // Raw minute income before any cleaning.
  double raw_inc() const { return has_income() ? total_payment / total_delivery_minutes : 0.0; }
  std::map<ZoneId, double> dropoff_dist() const;
};

using PriorCounts = std::map<std::pair<ZoneId, Bucket>, long>;

struct AreaStatsTable {
  BucketConfig bucketing;
  std::map<std::pair<ZoneId, Bucket>, ZoneBucketStats> cells;
  // Observed (pickup, dropoff, bucket) delivery-minute statistics.
  std::map<std::tuple<ZoneId, ZoneId, Bucket>, PairStats> pair_delivery;
  // City-wide delivery statistics fitted from the accepted records.
  double mu_delivery = 0.0;
  double sigma_delivery = 0.0;
  // City-wide cruising statistics; trip records carry no driver identity,
  // so these come from configuration.
  double mu_cruise = 0.0;
  double sigma_cruise = 0.0;
  PriorCounts prior;
  long accepted_records = 0;

  const ZoneBucketStats* cell(ZoneId z, const Bucket& b) const;
  long prior_count(ZoneId z, const Bucket& b) const;
  // Totals over all buckets of the given month.
  long month_pickups(ZoneId z, int month) const;
  long month_prior(ZoneId z, int month) const;
};

struct CruiseDefaults {
  double mu = 10.0;
  double sigma = 4.0;
};

AreaStatsTable build_area_stats(const std::vector<TripRecord>& records, const ZoneGraph& graph,
                                const BucketConfig& bucketing, const PriorCounts& prior,
                                const CruiseDefaults& cruise = {});

// Prior-year counts CSV: `zone_id,bucket_key,pickup_count` with header.
PriorCounts parse_prior_counts(std::istream& in, const BucketConfig& bucketing);
void write_prior_counts(const PriorCounts& prior, std::ostream& out);

// Snapshot persistence: a directory of deterministic CSV files plus the
// adjacency file, loadable bit-identically.
void save_stats_snapshot(const AreaStatsTable& table, const ZoneGraph& graph,
                         const std::string& dir);
std::pair<AreaStatsTable, ZoneGraph> load_stats_snapshot(const std::string& dir);

}  // namespace atdsc

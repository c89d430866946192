#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <tuple>

#include "atdsc/graph.hpp"
#include "atdsc/ingest.hpp"
#include "atdsc/types.hpp"

namespace atdsc {

// Travel-time estimates with a three-way case split: observed pair mean,
// weighted shortest path for connected pairs, seeded uniform draw inside
// the normal 3-sigma bounds otherwise.
class TravelTimeModel {
 public:
  TravelTimeModel(const AreaStatsTable& stats, std::uint64_t rng_seed);

  // Observed per-pair means; cruise pairs only exist when a data source
  // with driver identity supplies them.
  void set_pair_delivery_mean(ZoneId pickup, ZoneId dropoff, const Bucket& b, double minutes);
  void set_pair_cruise_mean(ZoneId dropoff, ZoneId pickup, const Bucket& b, double minutes);

  double delivery_time(ZoneId pickup, ZoneId dropoff, const Bucket& b,
                       const ZoneGraph& graph) const;
  double cruising_time(ZoneId dropoff, ZoneId next_pickup, const Bucket& b,
                       const ZoneGraph& graph) const;

  double mu_delivery() const { return mu_del_; }
  double sigma_delivery() const { return sigma_del_; }
  double mu_cruise() const { return mu_cru_; }
  double sigma_cruise() const { return sigma_cru_; }
  double lb_delivery() const { return mu_del_ - 3.0 * sigma_del_; }
  double ub_delivery() const { return mu_del_ + 3.0 * sigma_del_; }
  double lb_cruise() const { return mu_cru_ - 3.0 * sigma_cru_; }
  double ub_cruise() const { return mu_cru_ + 3.0 * sigma_cru_; }

 private:
  double pair_mean(ZoneId a, ZoneId b, const Bucket& bucket, bool cruise) const;
  double shortest_path(ZoneId from, ZoneId to, const Bucket& bucket, bool cruise,
                       const ZoneGraph& graph) const;
  double uniform_fallback(ZoneId a, ZoneId b, const Bucket& bucket, bool cruise) const;

  std::map<std::tuple<ZoneId, ZoneId, Bucket>, double> delivery_means_;
  std::map<std::tuple<ZoneId, ZoneId, Bucket>, double> cruise_means_;
  double mu_del_, sigma_del_, mu_cru_, sigma_cru_;
  std::uint64_t seed_;
};

// Fraction of samples inside [mean - 3 sd, mean + 3 sd] of the fitted
// normal. A normal population puts about 99.7% of its mass there.
double coverage_check(std::span<const double> samples);

}  // namespace atdsc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "atdsc/ingest.hpp"

namespace atdsc {

// Desk-scale synthetic corpus generator. Deterministic given the seed.
struct SynthSpec {
  int zones = 10;                  // M
  BucketConfig bucketing{{6}, 2};  // default: a June-like single month
  std::uint64_t seed = 1;
  // Mean pickups per (zone, bucket) before per-zone weighting.
  double base_demand = 40.0;
  // Scales per-zone pickup counts relative to the prior year. The
  // pandemic switch sets this to 0.1 (roughly a 90% trip decrease).
  double demand_factor = 1.0;
  // When false every hour shares one demand level; when true demand peaks
  // in the morning and evening.
  bool peaked_hours = true;
  double base_minute_income = 1.3;  // USD per delivery minute
  double mu_delivery = 15.0;
  double sigma_delivery = 3.0;
};

struct SynthCorpus {
  std::vector<TripRecord> records;
  ZoneGraph graph;
  PriorCounts prior;
};

SynthCorpus generate_synthetic_corpus(const SynthSpec& spec);

// Writes trips.csv, adjacency.txt, prior.csv under dir.
void write_synth_corpus(const SynthCorpus& corpus, const std::string& dir);

}  // namespace atdsc

#include "atdsc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

namespace atdsc {

namespace {

// Deterministic per-entity noise in [0,1), independent of draw order.
double hash_unit(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  const std::uint64_t h = mix_seed(mix_seed(seed, a), mix_seed(b, c));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double hour_profile(bool peaked, int hour) {
  if (!peaked) return 1.0;
  const double morning = std::exp(-0.5 * std::pow((hour - 8.0) / 2.5, 2));
  const double evening = std::exp(-0.5 * std::pow((hour - 18.0) / 2.5, 2));
  return 0.6 + 1.2 * (morning + evening);
}

// First day of the month (year 2020) whose day kind matches.
std::int64_t representative_day(const BucketConfig& bucketing, int month, int day_kind) {
  for (int d = 1; d <= 28; ++d) {
    const std::int64_t days = days_from_civil(2020, month, d);
    if (bucketing.day_kind_of_weekday(weekday_from_days(days)) == day_kind) return days;
  }
  throw UsageError("no representative day for month " + std::to_string(month));
}

}  // namespace

SynthCorpus generate_synthetic_corpus(const SynthSpec& spec) {
  if (spec.zones < 2) throw UsageError("synthetic city needs at least 2 zones");
  SynthCorpus corpus;
  const int M = spec.zones;
  std::mt19937_64 rng(spec.seed);

  // Ring topology with a few deterministic chords keeps every zone
  // reachable while leaving non-adjacent pairs for the shortest-path and
  // fallback branches.
  std::map<ZoneId, std::set<ZoneId>> adj;
  for (int z = 1; z <= M; ++z) {
    const int next = z == M ? 1 : z + 1;
    if (next != z) adj[z].insert(next);
  }
  if (M > 4) {
    std::uniform_int_distribution<int> pick(1, M);
    const int chords = M / 3;
    for (int i = 0; i < chords; ++i) {
      const int a = pick(rng);
      const int b = pick(rng);
      if (a != b && !adj[a].count(b) && std::abs(a - b) != 1 && std::abs(a - b) != M - 1)
        adj[a].insert(b);
    }
  }
  corpus.graph = ZoneGraph(std::move(adj));

  std::vector<double> zone_weight(M + 1, 1.0);
  std::vector<double> zone_rate(M + 1, spec.base_minute_income);
  for (int z = 1; z <= M; ++z) {
    zone_weight[z] = 0.5 + 1.5 * hash_unit(spec.seed, 101, z, 0);
    zone_rate[z] = spec.base_minute_income * (0.6 + 0.8 * hash_unit(spec.seed, 202, z, 0));
  }

  std::normal_distribution<double> payment_noise(1.0, 0.05);
  for (int month : spec.bucketing.months) {
    for (int dk = 0; dk < spec.bucketing.day_kinds; ++dk) {
      const std::int64_t day = representative_day(spec.bucketing, month, dk);
      const double dk_factor = dk == spec.bucketing.day_kinds - 1 && spec.bucketing.day_kinds == 2
                                   ? 0.8
                                   : 1.0;
      for (int hour = 0; hour < 24; ++hour) {
        for (int z = 1; z <= M; ++z) {
          const double lambda =
              spec.base_demand * zone_weight[z] * hour_profile(spec.peaked_hours, hour) * dk_factor;
          std::poisson_distribution<long> prior_draw(lambda);
          std::poisson_distribution<long> cur_draw(std::max(1e-9, lambda * spec.demand_factor));
          const Bucket b{month, dk, hour};
          corpus.prior[{z, b}] += prior_draw(rng);
          const long trips = cur_draw(rng);
          const auto& neigh = corpus.graph.neighbors(z);
          std::vector<ZoneId> local(neigh.begin(), neigh.end());
          local.push_back(z);
          for (long t = 0; t < trips; ++t) {
            TripRecord rec;
            std::uniform_int_distribution<int> minute(0, 59);
            rec.pickup_time = day * 1440 + hour * 60 + minute(rng);
            ZoneId drop;
            if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.85) {
              drop = local[std::uniform_int_distribution<std::size_t>(0, local.size() - 1)(rng)];
            } else {
              drop = 1 + std::uniform_int_distribution<int>(0, M - 1)(rng);
            }
            rec.dropoff_zone = drop;
            rec.pickup_zone = z;
            const double pair_mu =
                spec.mu_delivery * (0.7 + 0.6 * hash_unit(spec.seed, 303, z, drop));
            std::normal_distribution<double> dur(pair_mu, spec.sigma_delivery);
            const double minutes = std::max(2.0, std::round(dur(rng)));
            rec.dropoff_time = rec.pickup_time + static_cast<MinuteStamp>(minutes);
            rec.total_payment =
                std::max(2.5, zone_rate[z] * minutes * std::max(0.5, payment_noise(rng)));
            rec.total_payment = std::round(rec.total_payment * 100.0) / 100.0;
            rec.trip_distance = std::round(minutes * 0.3 * 100.0) / 100.0;
            rec.payment_type = 1 + static_cast<int>(hash_unit(spec.seed, 404, z, t) * 2);
            rec.passenger_count = 1 + static_cast<int>(hash_unit(spec.seed, 505, z, t) * 3);
            corpus.records.push_back(rec);
          }
        }
      }
    }
  }
  std::stable_sort(corpus.records.begin(), corpus.records.end(),
                   [](const TripRecord& a, const TripRecord& b) {
                     return std::tie(a.pickup_time, a.pickup_zone, a.dropoff_zone) <
                            std::tie(b.pickup_time, b.pickup_zone, b.dropoff_zone);
                   });
  return corpus;
}

void write_synth_corpus(const SynthCorpus& corpus, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "trips.csv", std::ios::binary);
    if (!out) throw UsageError("cannot write trips.csv under " + dir);
    write_trip_records(corpus.records, out);
  }
  {
    std::ofstream out(fs::path(dir) / "adjacency.txt", std::ios::binary);
    if (!out) throw UsageError("cannot write adjacency.txt under " + dir);
    write_zone_adjacency(corpus.graph, out);
  }
  {
    std::ofstream out(fs::path(dir) / "prior.csv", std::ios::binary);
    if (!out) throw UsageError("cannot write prior.csv under " + dir);
    write_prior_counts(corpus.prior, out);
  }
}

}  // namespace atdsc

#pragma once

// Hand-built fixtures shared by the module tests: small stats tables whose
// buckets all carry identical statistics, so expected values can be worked
// out by hand.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "atdsc/graph.hpp"
#include "atdsc/ingest.hpp"
#include "atdsc/mdp.hpp"
#include "atdsc/travel.hpp"

namespace atdsc::testutil {

struct ZoneSpec {
  ZoneId zone = 0;
  long pickups = 10;
  double minute_income = 2.0;        // raw USD per delivery minute
  std::map<ZoneId, long> dropoffs;   // counts; empty means all trips end in-zone
  double delivery_mean = 10.0;       // observed mean minutes to each drop-off
  long prior = 10;                   // prior-year pickups, per bucket
};

struct Fixture {
  BucketConfig bucketing{{6}, 2};
  ZoneGraph graph;
  AreaStatsTable stats;
  std::optional<TravelTimeModel> travel;
  std::optional<MdpModel> model;
  Bucket bucket{6, 0, 0};
};

// Every (day-kind, hour) bucket of the single month gets the same
// hand-specified statistics, making the instance time-homogeneous.
inline std::unique_ptr<Fixture> make_fixture(
    std::map<ZoneId, std::set<ZoneId>> adjacency, const std::vector<ZoneSpec>& zones,
    const std::map<std::pair<ZoneId, ZoneId>, double>& cruise_means = {},
    const MdpConfig& config = {}, std::uint64_t seed = 99) {
  auto fx = std::make_unique<Fixture>();
  fx->graph = ZoneGraph(std::move(adjacency));
  fx->stats.bucketing = fx->bucketing;
  fx->stats.mu_delivery = 15.0;
  fx->stats.sigma_delivery = 3.0;
  fx->stats.mu_cruise = 10.0;
  fx->stats.sigma_cruise = 4.0;
  for (int bi = 0; bi < fx->bucketing.bucket_count(); ++bi) {
    const Bucket b = fx->bucketing.bucket_at(bi);
    for (const ZoneSpec& zs : zones) {
      ZoneBucketStats cell;
      cell.pickup_count = zs.pickups;
      cell.total_delivery_minutes = static_cast<double>(zs.pickups) * zs.delivery_mean;
      cell.total_payment = zs.minute_income * cell.total_delivery_minutes;
      cell.dropoff_counts =
          zs.dropoffs.empty() ? std::map<ZoneId, long>{{zs.zone, zs.pickups}} : zs.dropoffs;
      fx->stats.cells[{zs.zone, b}] = cell;
      for (const auto& [d, n] : cell.dropoff_counts) {
        PairStats ps;
        ps.n = n;
        ps.sum = static_cast<double>(n) * zs.delivery_mean;
        ps.sumsq = static_cast<double>(n) * zs.delivery_mean * zs.delivery_mean;
        fx->stats.pair_delivery[{zs.zone, d, b}] = ps;
      }
      fx->stats.prior[{zs.zone, b}] = zs.prior;
      fx->stats.accepted_records += zs.pickups;
    }
  }
  fx->travel.emplace(fx->stats, seed);
  for (int bi = 0; bi < fx->bucketing.bucket_count(); ++bi) {
    const Bucket b = fx->bucketing.bucket_at(bi);
    for (const auto& [pair, minutes] : cruise_means)
      fx->travel->set_pair_cruise_mean(pair.first, pair.second, b, minutes);
  }
  fx->model.emplace(fx->stats, fx->graph, *fx->travel, config);
  return fx;
}

// A 4-zone ring with asymmetric incomes, used wherever a small instance
// with a nontrivial optimum is needed.
inline std::unique_ptr<Fixture> make_ring4() {
  return make_fixture(
      {{1, {2, 4}}, {2, {1, 3}}, {3, {2, 4}}, {4, {1, 3}}},
      {{.zone = 1, .pickups = 20, .minute_income = 1.2, .delivery_mean = 12.0, .prior = 20},
       {.zone = 2, .pickups = 40, .minute_income = 2.0, .delivery_mean = 10.0, .prior = 40},
       {.zone = 3, .pickups = 60, .minute_income = 2.6, .delivery_mean = 11.0, .prior = 60},
       {.zone = 4, .pickups = 30, .minute_income = 1.6, .delivery_mean = 9.0, .prior = 30}},
      {{{1, 2}, 6.0}, {{2, 3}, 5.0}, {{3, 4}, 7.0}, {{4, 1}, 8.0}});
}

}  // namespace atdsc::testutil

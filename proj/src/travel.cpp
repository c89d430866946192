#include "atdsc/travel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

namespace atdsc {

TravelTimeModel::TravelTimeModel(const AreaStatsTable& stats, std::uint64_t rng_seed)
    : mu_del_(stats.mu_delivery),
      sigma_del_(stats.sigma_delivery),
      mu_cru_(stats.mu_cruise),
      sigma_cru_(stats.sigma_cruise),
      seed_(rng_seed) {
  for (const auto& [key, ps] : stats.pair_delivery)
    if (ps.n > 0 && ps.mean() > 0.0) delivery_means_[key] = ps.mean();
  if (ub_delivery() <= std::max(0.0, lb_delivery()))
    throw UsageError("degenerate delivery-time bounds");
  if (ub_cruise() <= std::max(0.0, lb_cruise()))
    throw UsageError("degenerate cruising-time bounds");
}

void TravelTimeModel::set_pair_delivery_mean(ZoneId pickup, ZoneId dropoff, const Bucket& b,
                                             double minutes) {
  if (minutes <= 0.0) throw UsageError("pair delivery mean must be positive");
  delivery_means_[{pickup, dropoff, b}] = minutes;
}

void TravelTimeModel::set_pair_cruise_mean(ZoneId dropoff, ZoneId pickup, const Bucket& b,
                                           double minutes) {
  if (minutes <= 0.0) throw UsageError("pair cruise mean must be positive");
  cruise_means_[{dropoff, pickup, b}] = minutes;
}

double TravelTimeModel::pair_mean(ZoneId a, ZoneId b, const Bucket& bucket, bool cruise) const {
  const auto& means = cruise ? cruise_means_ : delivery_means_;
  auto it = means.find({a, b, bucket});
  if (it != means.end()) return it->second;
  // <V_in, V_out> is equivalent to <V_out, V_in>.
  it = means.find({b, a, bucket});
  if (it != means.end()) return it->second;
  return 0.0;
}

double TravelTimeModel::shortest_path(ZoneId from, ZoneId to, const Bucket& bucket, bool cruise,
                                      const ZoneGraph& graph) const {
  // Dijkstra with edge weight = observed pair mean when present, else the
  // city-wide mean. Ties break toward the smallest zone id.
  const double global_mean = cruise ? mu_cru_ : mu_del_;
  std::map<ZoneId, double> dist;
  using Item = std::pair<double, ZoneId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  dist[from] = 0.0;
  frontier.emplace(0.0, from);
  while (!frontier.empty()) {
    auto [d, cur] = frontier.top();
    frontier.pop();
    if (d > dist.at(cur)) continue;
    if (cur == to) return d;
    for (ZoneId n : graph.neighbors(cur)) {
      double w = pair_mean(cur, n, bucket, cruise);
      if (w <= 0.0) w = global_mean;
      const double nd = d + w;
      auto it = dist.find(n);
      if (it == dist.end() || nd < it->second) {
        dist[n] = nd;
        frontier.emplace(nd, n);
      }
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double TravelTimeModel::uniform_fallback(ZoneId a, ZoneId b, const Bucket& bucket,
                                         bool cruise) const {
  const double lo = std::max(0.0, cruise ? lb_cruise() : lb_delivery());
  const double hi = cruise ? ub_cruise() : ub_delivery();
  // Seeded per query tuple: the same pair and bucket always reproduce the
  // same draw within a run.
  const std::uint64_t tag = cruise ? 0xc521u : 0xde17u;
  std::mt19937_64 rng(mix_seed(mix_seed(seed_, tag),
                               mix_seed(static_cast<std::uint64_t>(a) << 32 |
                                            static_cast<std::uint32_t>(b),
                                        static_cast<std::uint64_t>(bucket.month) << 16 |
                                            bucket.day_kind << 8 | bucket.hour)));
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double TravelTimeModel::delivery_time(ZoneId pickup, ZoneId dropoff, const Bucket& b,
                                      const ZoneGraph& graph) const {
  if (const double m = pair_mean(pickup, dropoff, b, false); m > 0.0) return m;
  if (pickup == dropoff) return mu_del_;  // intra-zone trip with no observed record
  if (graph.has_zone(pickup) && graph.has_zone(dropoff) && graph.connected(pickup, dropoff)) {
    const double sp = shortest_path(pickup, dropoff, b, false, graph);
    if (std::isfinite(sp)) return sp;
  }
  return uniform_fallback(pickup, dropoff, b, false);
}

double TravelTimeModel::cruising_time(ZoneId dropoff, ZoneId next_pickup, const Bucket& b,
                                      const ZoneGraph& graph) const {
  if (dropoff == next_pickup) return 0.0;
  if (const double m = pair_mean(dropoff, next_pickup, b, true); m > 0.0) return m;
  if (graph.has_zone(dropoff) && graph.has_zone(next_pickup) &&
      graph.connected(dropoff, next_pickup)) {
    const double sp = shortest_path(dropoff, next_pickup, b, true, graph);
    if (std::isfinite(sp)) return sp;
  }
  return uniform_fallback(dropoff, next_pickup, b, true);
}

double coverage_check(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0, sumsq = 0.0;
  for (double x : samples) {
    sum += x;
    sumsq += x * x;
  }
  const double n = static_cast<double>(samples.size());
  const double mean = sum / n;
  const double sd = std::sqrt(std::max(0.0, sumsq / n - mean * mean));
  long inside = 0;
  for (double x : samples)
    if (x >= mean - 3.0 * sd && x <= mean + 3.0 * sd) ++inside;
  return static_cast<double>(inside) / n;
}

}  // namespace atdsc

#include "atdsc/baselines.hpp"

namespace atdsc {

std::optional<ZoneId> greedy_next(GreedyKind kind, ZoneId current, ZoneId previous,
                                  const Bucket& b, const MdpModel& model) {
  std::optional<ZoneId> best;
  double best_score = 0.0;
  for (ZoneId n : model.successors(current)) {
    if (n == previous) continue;
    double score = 0.0;
    switch (kind) {
      case GreedyKind::MaxPickupProbability:
        score = model.p_pick(n, b);
        break;
      case GreedyKind::MaxMinuteIncome:
        score = model.cleaned_inc(n, b);
        break;
      case GreedyKind::MinCruiseTime:
        score = -model.expected_cruise(current, n, b);
        break;
    }
    // Successors are sorted ascending, so the first maximum keeps the
    // smallest id on ties.
    if (!best || score > best_score) {
      best = n;
      best_score = score;
    }
  }
  return best;
}

Route run_greedy(GreedyKind kind, ZoneId start, double budget_minutes, const MdpModel& model,
                 const Bucket& start_bucket) {
  Route route;
  route.zones.push_back(start);
  const BucketConfig& bucketing = model.bucketing();
  ZoneId cur = start;
  ZoneId prev = 0;
  double elapsed = 0.0;
  while (elapsed < budget_minutes) {
    const Bucket b = bucketing.advance_hours(start_bucket, static_cast<int>(elapsed / 60.0));
    const auto next = greedy_next(kind, cur, prev, b, model);
    if (!next) break;
    elapsed += model.expected_delivery(cur, b) + model.expected_cruise(cur, *next, b);
    route.zones.push_back(*next);
    prev = cur;
    cur = *next;
  }
  return route;
}

}  // namespace atdsc

#pragma once

#include <span>
#include <vector>

#include "atdsc/mdp.hpp"
#include "atdsc/types.hpp"

namespace atdsc {

enum class RewardMetric { Income, Occupancy };

// Ordered pickup-zone sequence starting at the initial state.
struct Route {
  std::vector<ZoneId> zones;
};

struct LegEval {
  ZoneId pickup = 0;
  ZoneId next_pickup = 0;
  double delivery_minutes = 0.0;
  double cruise_minutes = 0.0;
  double expected_earning = 0.0;  // p_gr * INC * t_del
  double p_gr = 0.0;
};

struct RouteEval {
  double profit = 0.0;              // expected USD over the admitted legs
  double total_delivery = 0.0;
  double total_cruise = 0.0;
  double total_minutes = 0.0;
  double overshoot_minutes = 0.0;   // how far the last admitted leg ran past t
  bool truncated = false;           // route exhausted before the budget
  std::vector<LegEval> legs;

  double occupancy() const {
    const double denom = total_delivery + total_cruise;
    return denom > 0.0 ? total_delivery / denom : 0.0;
  }
  double metric(RewardMetric m) const {
    return m == RewardMetric::Income ? profit : occupancy();
  }
};

// Path evaluation: legs are admitted while accumulated time is below the
// budget; the leg that crosses the budget still counts. Statistics follow
// the bucket of the accumulated time (hour switching).
RouteEval eval_route(const Route& r, double budget_minutes, const MdpModel& model,
                     const Bucket& start_bucket);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Mean of daily/24 over runs; standard error = sqrt(var(daily)/q) / 24.
MeanStderr hourly_income(std::span<const double> daily_profits);

// Ten working hours per day, seven days.
double weekly_income(std::span<const double> hourly_means_per_day);

struct LogImprovement {
  double value = 0.0;
  double raw_ratio = 0.0;  // (a - b) / b
  bool defined = false;    // false when a <= b (log argument not positive)
};

LogImprovement log_improvement(double weekly_atdsc, double weekly_baseline);

double occupancy_rate(std::span<const LegEval> legs);

}  // namespace atdsc

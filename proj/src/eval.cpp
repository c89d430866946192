#include "atdsc/eval.hpp"

#include <cmath>

namespace atdsc {

RouteEval eval_route(const Route& r, double budget_minutes, const MdpModel& model,
                     const Bucket& start_bucket) {
  RouteEval out;
  if (r.zones.empty()) return out;
  const BucketConfig& bucketing = model.bucketing();
  double t_sel = 0.0;
  std::size_t count = 0;
  while (t_sel < budget_minutes) {
    if (count + 1 >= r.zones.size()) {
      out.truncated = true;
      break;
    }
    const ZoneId pickup = r.zones[count];
    const ZoneId next = r.zones[count + 1];
    const Bucket b = bucketing.advance_hours(start_bucket, static_cast<int>(t_sel / 60.0));
    LegEval leg;
    leg.pickup = pickup;
    leg.next_pickup = next;
    leg.delivery_minutes = model.expected_delivery(pickup, b);
    leg.cruise_minutes = model.expected_cruise(pickup, next, b);
    leg.p_gr = model.p_gr(pickup, next, b);
    leg.expected_earning = leg.p_gr * model.cleaned_inc(pickup, b) * leg.delivery_minutes;
    out.profit += leg.expected_earning;
    out.total_delivery += leg.delivery_minutes;
    out.total_cruise += leg.cruise_minutes;
    t_sel += leg.delivery_minutes + leg.cruise_minutes;
    out.legs.push_back(leg);
    ++count;
  }
  out.total_minutes = t_sel;
  out.overshoot_minutes = t_sel > budget_minutes ? t_sel - budget_minutes : 0.0;
  return out;
}

MeanStderr hourly_income(std::span<const double> daily_profits) {
  MeanStderr out;
  if (daily_profits.empty()) return out;
  const double q = static_cast<double>(daily_profits.size());
  double sum = 0.0, sumsq = 0.0;
  for (double d : daily_profits) {
    sum += d;
    sumsq += d * d;
  }
  const double mean_daily = sum / q;
  const double var_daily = std::max(0.0, sumsq / q - mean_daily * mean_daily);
  out.mean = mean_daily / 24.0;
  out.stderr_ = std::sqrt(var_daily / q) / 24.0;
  return out;
}

double weekly_income(std::span<const double> hourly_means_per_day) {
  double total = 0.0;
  for (double h : hourly_means_per_day) total += 10.0 * h;
  return total;
}

LogImprovement log_improvement(double weekly_atdsc, double weekly_baseline) {
  LogImprovement out;
  if (weekly_baseline <= 0.0) {
    out.raw_ratio = 0.0;
    return out;
  }
  out.raw_ratio = (weekly_atdsc - weekly_baseline) / weekly_baseline;
  if (out.raw_ratio > 0.0) {
    out.value = std::log(out.raw_ratio);
    out.defined = true;
  }
  return out;
}

double occupancy_rate(std::span<const LegEval> legs) {
  double del = 0.0, cru = 0.0;
  for (const LegEval& leg : legs) {
    del += leg.delivery_minutes;
    cru += leg.cruise_minutes;
  }
  const double denom = del + cru;
  return denom > 0.0 ? del / denom : 0.0;
}

}  // namespace atdsc

#include "atdsc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <random>

namespace atdsc {

const char* method_name(Method m) {
  switch (m) {
    case Method::ATDSC: return "ATDSC";
    case Method::REI: return "REI";
    case Method::MPP: return "MPP";
    case Method::MNP: return "MNP";
    case Method::PCD: return "PCD";
  }
  return "?";
}

std::vector<Method> all_methods() {
  return {Method::ATDSC, Method::REI, Method::MPP, Method::MNP, Method::PCD};
}

double BenchmarkReport::lookup(Method m, int month, const std::string& metric) const {
  for (const BenchmarkRow& row : rows)
    if (row.method == m && row.month == month && row.day_kind == -1 && row.metric == metric)
      return row.value;
  return std::nan("");
}

MonthGate decide_gate(const AreaStatsTable& stats, const ZoneGraph& graph, int month,
                      double threshold, const BenchmarkOptions& options) {
  MonthGate out;
  std::vector<double> current, prior;
  for (ZoneId z : graph.zones()) {
    current.push_back(static_cast<double>(stats.month_pickups(z, month)));
    prior.push_back(static_cast<double>(stats.month_prior(z, month)));
  }
  const int m = static_cast<int>(graph.zone_count());
  for (int i = 0; i < m; ++i)
    if (!(current[i] < threshold * prior[i])) ++out.n_normal;
  if (options.rule_only || options.gate_model == nullptr) {
    out.gate = rule_label(current, prior, threshold);
  } else {
    out.gate = options.gate_model->classify(make_features(current, prior).flat());
  }
  if (options.fixed_failure_count) {
    out.failure_count = options.failure_config.c;
  } else {
    out.failure_count = failure_count(out.gate, out.n_normal, m, options.failure_config);
  }
  return out;
}

namespace {

struct RunOutcome {
  double daily = 0.0;
  double occupancy = 0.0;
  std::vector<CheckLogRow> log;
};

RunOutcome one_run(Method method, ZoneId start, std::uint64_t seed, const MdpModel& model,
                   const Bucket& start_bucket, const BenchmarkOptions& options,
                   long failure_count_value) {
  Route route;
  std::vector<CheckLogRow> log;
  const double day_budget = 1440.0;
  switch (method) {
    case Method::ATDSC: {
      LearnerConfig cfg = options.learner;
      cfg.start_zone = start;
      cfg.seed = seed;
      cfg.time_budget_minutes = day_budget;
      cfg.metric = options.metric;
      RunOptions run_options;
      run_options.self_check_enabled = true;
      run_options.failure_count = failure_count_value;
      run_options.train_bucket = start_bucket;
      const RunResult result = run_atdsc(cfg, model, run_options);
      route = result.best_route;
      log = result.log;
      break;
    }
    case Method::REI: {
      LearnerConfig cfg = options.learner;
      cfg.start_zone = start;
      cfg.seed = seed;
      cfg.time_budget_minutes = day_budget;
      cfg.metric = options.metric;
      const RunResult result = run_td_plain(cfg, model, start_bucket);
      route = result.best_route;
      break;
    }
    case Method::MPP:
      route = run_greedy(GreedyKind::MaxPickupProbability, start, day_budget, model, start_bucket);
      break;
    case Method::MNP:
      route = run_greedy(GreedyKind::MaxMinuteIncome, start, day_budget, model, start_bucket);
      break;
    case Method::PCD:
      route = run_greedy(GreedyKind::MinCruiseTime, start, day_budget, model, start_bucket);
      break;
  }
  const RouteEval ev = eval_route(route, day_budget, model, start_bucket);
  return {ev.profit, ev.occupancy(), std::move(log)};
}

}  // namespace

BenchmarkReport benchmark_suite(const AreaStatsTable& stats, const ZoneGraph& graph,
                                const MdpModel& model, const BenchmarkOptions& options) {
  if (options.runs < 1) throw UsageError("benchmark needs at least one run");
  BenchmarkReport report;
  report.runs = options.runs;
  const auto& zones = graph.zones();
  const auto& bucketing = model.bucketing();
  const double threshold = model.config().abnormal_threshold;

  for (int month : bucketing.months) {
    const MonthGate gate = decide_gate(stats, graph, month, threshold, options);

    // Random initial states come from a dedicated seed stream shared by
    // all methods, so the comparison is paired.
    std::mt19937_64 start_rng(mix_seed(options.seed, 0x57a47ull));
    std::vector<ZoneId> starts(options.runs);
    for (int i = 0; i < options.runs; ++i)
      starts[i] = zones[std::uniform_int_distribution<std::size_t>(0, zones.size() - 1)(start_rng)];

    std::map<Method, std::vector<double>> weekly_hourly;  // per day_kind mean hourly
    for (Method method : all_methods()) {
      std::vector<double> day_kind_hourly;
      std::vector<double> occupancy_all;
      for (int dk = 0; dk < bucketing.day_kinds; ++dk) {
        const Bucket start_bucket{month, dk, options.start_hour};
        std::vector<RunOutcome> outcomes(options.runs);
        const int jobs = std::max(1, options.jobs);
        std::vector<std::future<void>> futures;
        for (int w = 0; w < jobs; ++w) {
          futures.push_back(std::async(std::launch::async, [&, w] {
            for (int i = w; i < options.runs; i += jobs) {
              const std::uint64_t run_seed =
                  mix_seed(mix_seed(options.seed, static_cast<std::uint64_t>(month) * 100 + dk),
                           mix_seed(static_cast<std::uint64_t>(method), i));
              outcomes[i] = one_run(method, starts[i], run_seed, model, start_bucket, options,
                                    gate.failure_count);
            }
          }));
        }
        for (auto& f : futures) f.get();

        std::vector<double> dailies;
        for (const RunOutcome& o : outcomes) {
          dailies.push_back(o.daily);
          occupancy_all.push_back(o.occupancy);
        }
        if (method == Method::ATDSC) {
          for (int i = 0; i < options.runs; ++i)
            for (const CheckLogRow& row : outcomes[i].log) {
              report.atdsc_log.push_back(row);
              char tag[64];
              std::snprintf(tag, sizeof(tag), "%d,%d,%d", month, dk, i);
              report.atdsc_log_tags.emplace_back(tag);
            }
        }
        const MeanStderr hourly = hourly_income(dailies);
        day_kind_hourly.push_back(hourly.mean);
        report.rows.push_back(
            {method, month, dk, "hourly_income", hourly.mean, hourly.stderr_});
      }

      // Weekly: five weekday + two weekend days under 2 day kinds, one
      // each under 7.
      double weekly = 0.0;
      if (bucketing.day_kinds == 2) {
        weekly = 10.0 * (5.0 * day_kind_hourly[0] + 2.0 * day_kind_hourly[1]);
      } else {
        std::vector<double> per_day;
        for (int d = 0; d < 7; ++d)
          per_day.push_back(day_kind_hourly[d % day_kind_hourly.size()]);
        weekly = weekly_income(per_day);
      }
      report.rows.push_back({method, month, -1, "weekly_income", weekly, 0.0});

      double occ_sum = 0.0, occ_sumsq = 0.0;
      for (double o : occupancy_all) {
        occ_sum += o;
        occ_sumsq += o * o;
      }
      const double n = static_cast<double>(occupancy_all.size());
      const double occ_mean = occ_sum / n;
      const double occ_var = std::max(0.0, occ_sumsq / n - occ_mean * occ_mean);
      report.rows.push_back(
          {method, month, -1, "occupancy_rate", occ_mean, std::sqrt(occ_var / n)});
    }

    report.rows.push_back({Method::ATDSC, month, -1, "gate", static_cast<double>(gate.gate), 0.0});
    report.rows.push_back(
        {Method::ATDSC, month, -1, "failure_count", static_cast<double>(gate.failure_count), 0.0});

    const double atdsc_weekly = report.lookup(Method::ATDSC, month, "weekly_income");
    for (Method basl : {Method::REI, Method::MPP, Method::MNP, Method::PCD}) {
      const double b = report.lookup(basl, month, "weekly_income");
      const LogImprovement imp = log_improvement(atdsc_weekly, b);
      report.rows.push_back({basl, month, -1, "log_improvement",
                             imp.defined ? imp.value : std::nan(""), imp.raw_ratio});
    }
  }
  return report;
}

void write_report_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "method,month,day_kind,metric,value,stderr\n";
  char buf[64];
  for (const BenchmarkRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g", row.value, row.stderr_);
    out << method_name(row.method) << "," << row.month << ","
        << (row.day_kind < 0 ? std::string("all") : std::to_string(row.day_kind)) << ","
        << row.metric << "," << buf << "\n";
  }
}

void write_report_long_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "method,month,day_kind,metric,value\n";
  char buf[40];
  for (const BenchmarkRow& row : report.rows) {
    const std::string dk = row.day_kind < 0 ? "all" : std::to_string(row.day_kind);
    std::snprintf(buf, sizeof(buf), "%.10g", row.value);
    out << method_name(row.method) << "," << row.month << "," << dk << "," << row.metric << ","
        << buf << "\n";
    if (row.stderr_ != 0.0) {
      std::snprintf(buf, sizeof(buf), "%.10g", row.stderr_);
      out << method_name(row.method) << "," << row.month << "," << dk << "," << row.metric
          << "_stderr," << buf << "\n";
    }
  }
}

void write_run_log_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "month,day_kind,run,iteration,failure_counter,failure_count,restarts,candidate_profit,"
         "preserved_profit\n";
  char buf[64];
  for (std::size_t i = 0; i < report.atdsc_log.size(); ++i) {
    const CheckLogRow& row = report.atdsc_log[i];
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g", row.candidate_profit, row.preserved_profit);
    out << report.atdsc_log_tags[i] << "," << row.iteration << "," << row.failure_counter << ","
        << row.failure_count << "," << row.restarts << "," << buf << "\n";
  }
}

}  // namespace atdsc

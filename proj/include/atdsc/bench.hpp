#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "atdsc/anomaly.hpp"
#include "atdsc/baselines.hpp"
#include "atdsc/learner.hpp"

namespace atdsc {

enum class Method { ATDSC, REI, MPP, MNP, PCD };

const char* method_name(Method m);
std::vector<Method> all_methods();

struct BenchmarkOptions {
  int runs = 30;  // q independent experiments with random initial states
  std::uint64_t seed = 1;
  int jobs = 1;
  RewardMetric metric = RewardMetric::Income;
  // Adaptive failure count by default; fixed uses c for every month.
  bool fixed_failure_count = false;
  // Gate decision: the deterministic rule, or a trained classifier.
  bool rule_only = true;
  const MlpModel* gate_model = nullptr;
  FailureCountConfig failure_config;
  LearnerConfig learner;  // start_zone and seed are overridden per run
  int start_hour = 0;     // hour the simulated day starts at
};

struct BenchmarkRow {
  Method method = Method::ATDSC;
  int month = 0;
  int day_kind = -1;  // -1 for month-level rows
  std::string metric;
  double value = 0.0;
  double stderr_ = 0.0;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;
  int runs = 0;
  std::vector<CheckLogRow> atdsc_log;  // concatenated run logs
  std::vector<std::string> atdsc_log_tags;

  // weekly income (or occupancy) of a method in a month; NaN if missing.
  double lookup(Method m, int month, const std::string& metric) const;
};

// Gate decision and failure count for one month of data.
struct MonthGate {
  int gate = 0;
  int n_normal = 0;
  long failure_count = 8;
};
MonthGate decide_gate(const AreaStatsTable& stats, const ZoneGraph& graph, int month,
                      double threshold, const BenchmarkOptions& options);

BenchmarkReport benchmark_suite(const AreaStatsTable& stats, const ZoneGraph& graph,
                                const MdpModel& model, const BenchmarkOptions& options);

void write_report_csv(const BenchmarkReport& report, std::ostream& out);
void write_report_long_csv(const BenchmarkReport& report, std::ostream& out);
void write_run_log_csv(const BenchmarkReport& report, std::ostream& out);

}  // namespace atdsc

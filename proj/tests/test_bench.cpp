#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "atdsc/bench.hpp"
#include "atdsc/synth.hpp"

using namespace atdsc;

namespace {

struct BenchEnv {
  SynthCorpus corpus;
  AreaStatsTable stats;
  std::optional<TravelTimeModel> travel;
  std::optional<MdpModel> model;
};

std::unique_ptr<BenchEnv> make_env(double demand_factor = 1.0, std::uint64_t seed = 8) {
  auto env = std::make_unique<BenchEnv>();
  SynthSpec spec;
  spec.zones = 8;
  spec.seed = seed;
  spec.demand_factor = demand_factor;
  env->corpus = generate_synthetic_corpus(spec);
  env->stats = build_area_stats(env->corpus.records, env->corpus.graph, spec.bucketing,
                                env->corpus.prior);
  env->travel.emplace(env->stats, seed);
  env->model.emplace(env->stats, env->corpus.graph, *env->travel, MdpConfig{});
  return env;
}

BenchmarkOptions fast_options() {
  BenchmarkOptions options;
  options.runs = 3;
  options.seed = 4;
  options.jobs = 2;
  options.learner.iterations = 3000;
  options.learner.tau = 500;
  return options;
}

}  // namespace

TEST_CASE("report covers every method for the month") {
  const auto env = make_env();
  const BenchmarkReport report = benchmark_suite(env->stats, env->corpus.graph, *env->model,
                                                 fast_options());
  for (Method m : all_methods()) {
    const double weekly = report.lookup(m, 6, "weekly_income");
    CHECK(std::isfinite(weekly));
    CHECK(weekly > 0.0);
    const double occ = report.lookup(m, 6, "occupancy_rate");
    CHECK(occ > 0.0);
    CHECK(occ <= 1.0);
  }
}

TEST_CASE("identical options give identical reports") {
  const auto env = make_env();
  const BenchmarkReport a = benchmark_suite(env->stats, env->corpus.graph, *env->model,
                                            fast_options());
  const BenchmarkReport b = benchmark_suite(env->stats, env->corpus.graph, *env->model,
                                            fast_options());
  std::ostringstream sa, sb;
  write_report_csv(a, sa);
  write_report_csv(b, sb);
  CHECK(sa.str() == sb.str());
  std::ostringstream la, lb;
  write_run_log_csv(a, la);
  write_run_log_csv(b, lb);
  CHECK(la.str() == lb.str());
}

TEST_CASE("job count does not change the result") {
  const auto env = make_env();
  BenchmarkOptions serial = fast_options();
  serial.jobs = 1;
  BenchmarkOptions parallel = fast_options();
  parallel.jobs = 4;
  std::ostringstream sa, sb;
  write_report_csv(benchmark_suite(env->stats, env->corpus.graph, *env->model, serial), sa);
  write_report_csv(benchmark_suite(env->stats, env->corpus.graph, *env->model, parallel), sb);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("single run greedy rows have zero spread") {
  const auto env = make_env();
  BenchmarkOptions options = fast_options();
  options.runs = 1;
  const BenchmarkReport report = benchmark_suite(env->stats, env->corpus.graph, *env->model,
                                                 options);
  for (const BenchmarkRow& row : report.rows)
    if (row.metric == "hourly_income") CHECK(row.stderr_ == doctest::Approx(0.0));
}

TEST_CASE("gate decision on a normal month keeps the default failure count") {
  const auto env = make_env(1.0);
  const MonthGate gate = decide_gate(env->stats, env->corpus.graph, 6, 0.8, fast_options());
  CHECK(gate.gate == 0);
  CHECK(gate.failure_count == 8);
  CHECK(gate.n_normal == 8);
}

TEST_CASE("gate decision on a pandemic month shrinks the failure count") {
  const auto env = make_env(0.1);
  const MonthGate gate = decide_gate(env->stats, env->corpus.graph, 6, 0.8, fast_options());
  CHECK(gate.gate == 1);
  CHECK(gate.n_normal == 0);
  CHECK(gate.failure_count == 1);
}

TEST_CASE("fixed mode pins the failure count regardless of the gate") {
  const auto env = make_env(0.1);
  BenchmarkOptions options = fast_options();
  options.fixed_failure_count = true;
  const MonthGate gate = decide_gate(env->stats, env->corpus.graph, 6, 0.8, options);
  CHECK(gate.gate == 1);
  CHECK(gate.failure_count == 8);
}

TEST_CASE("occupancy metric produces rates instead of dollars") {
  const auto env = make_env();
  BenchmarkOptions options = fast_options();
  options.metric = RewardMetric::Occupancy;
  const BenchmarkReport report = benchmark_suite(env->stats, env->corpus.graph, *env->model,
                                                 options);
  for (Method m : all_methods()) {
    const double occ = report.lookup(m, 6, "occupancy_rate");
    CHECK(occ > 0.0);
    CHECK(occ <= 1.0);
  }
}

TEST_CASE("pandemic demand lowers every method's income") {
  const auto normal = make_env(1.0, 8);
  const auto pandemic = make_env(0.1, 8);
  const BenchmarkOptions options = fast_options();
  const BenchmarkReport rn = benchmark_suite(normal->stats, normal->corpus.graph, *normal->model,
                                             options);
  const BenchmarkReport rp = benchmark_suite(pandemic->stats, pandemic->corpus.graph,
                                             *pandemic->model, options);
  for (Method m : all_methods()) {
    CHECK(rp.lookup(m, 6, "weekly_income") < rn.lookup(m, 6, "weekly_income"));
  }
}

TEST_CASE("report csv carries the expected header") {
  const auto env = make_env();
  const BenchmarkReport report = benchmark_suite(env->stats, env->corpus.graph, *env->model,
                                                 fast_options());
  std::ostringstream out;
  write_report_csv(report, out);
  CHECK(out.str().rfind("method,month,day_kind,metric,value,stderr", 0) == 0);
}

#include "atdsc/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <tuple>

#include "atdsc/bench.hpp"
#include "atdsc/pipeline.hpp"

namespace atdsc {

namespace fs = std::filesystem;

void cmd_synth(const RunConfig& config, const std::string& out_dir) {
  const SynthCorpus corpus = generate_synthetic_corpus(config.synth_spec());
  write_synth_corpus(corpus, out_dir);
}

void cmd_ingest(const RunConfig& config, const std::string& trips_path,
                const std::string& adjacency_path, const std::string& prior_path,
                const std::string& out_dir) {
  std::ifstream adj_in(adjacency_path);
  if (!adj_in) throw UsageError("cannot read adjacency file " + adjacency_path);
  const ZoneGraph graph = load_zone_adjacency(adj_in);

  std::ifstream trips_in(trips_path, std::ios::binary);
  if (!trips_in) throw UsageError("cannot read trip file " + trips_path);
  RejectionReport rejects;
  const auto records = parse_trip_records(trips_in, graph, rejects);

  const BucketConfig bucketing = config.bucket_config();
  PriorCounts prior;
  if (!prior_path.empty()) {
    std::ifstream prior_in(prior_path);
    if (!prior_in) throw UsageError("cannot read prior-counts file " + prior_path);
    prior = parse_prior_counts(prior_in, bucketing);
  }
  const AreaStatsTable table =
      build_area_stats(records, graph, bucketing, prior, config.cruise_defaults());
  save_stats_snapshot(table, graph, out_dir);

  std::ofstream report_out(fs::path(out_dir) / "ingest_report.csv", std::ios::binary);
  report_out << "key,value\n";
  report_out << "accepted," << records.size() << "\n";
  report_out << "malformed_rows," << rejects.malformed_rows << "\n";
  report_out << "unknown_zones," << rejects.unknown_zones << "\n";
  report_out << "nonpositive_durations," << rejects.nonpositive_durations << "\n";
}

void cmd_train_anomaly(const RunConfig& config, const std::string& stats_dir,
                       const std::string& model_out, std::string* summary) {
  int zones = static_cast<int>(config.get_long("synth_zones"));
  if (!stats_dir.empty()) {
    const auto [table, graph] = load_stats_snapshot(stats_dir);
    zones = static_cast<int>(graph.zone_count());
  }
  const long samples = config.get_long("mlp_train_samples");
  const auto dataset = make_training_set(zones, static_cast<int>(samples),
                                         static_cast<std::uint64_t>(config.get_long("seed")),
                                         config.get_double("abnormal_threshold"));
  TrainReport report;
  const MlpModel model = mlp_train(dataset, config.mlp_config(), &report);
  std::ofstream out(model_out, std::ios::binary);
  if (!out) throw UsageError("cannot write model file " + model_out);
  model.save(out);
  if (summary) {
    std::ostringstream ss;
    ss << "zones=" << zones << " samples=" << samples
       << " train_accuracy=" << report.train_accuracy
       << " validation_accuracy=" << report.validation_accuracy;
    *summary = ss.str();
  }
}

namespace {

// The travel and demand models hold references into the stats table and
// graph, so the whole environment lives behind one stable allocation.
struct LoadedEnv {
  AreaStatsTable stats;
  ZoneGraph graph;
  std::optional<TravelTimeModel> travel;
  std::optional<MdpModel> model;
};

std::unique_ptr<LoadedEnv> load_env(const RunConfig& config, const std::string& stats_dir) {
  auto env = std::make_unique<LoadedEnv>();
  std::tie(env->stats, env->graph) = load_stats_snapshot(stats_dir);
  env->travel.emplace(env->stats, static_cast<std::uint64_t>(config.get_long("seed")));
  env->model.emplace(env->stats, env->graph, *env->travel, config.mdp_config());
  return env;
}

}  // namespace

std::string cmd_recommend(const RunConfig& config, const std::string& stats_dir) {
  auto [stats, graph] = load_stats_snapshot(stats_dir);
  const TravelTimeModel travel(stats, static_cast<std::uint64_t>(config.get_long("seed")));
  const MdpModel model(stats, graph, travel, config.mdp_config());

  const LearnerConfig learner = config.learner_config();
  if (!graph.has_zone(learner.start_zone))
    throw UsageError("start zone " + std::to_string(learner.start_zone) + " is not in the graph");

  const int month = model.bucketing().months.front();
  const Bucket start_bucket{month, 0, static_cast<int>(config.get_long("start_hour"))};

  BenchmarkOptions gate_opts = config.benchmark_options();
  const MonthGate gate =
      decide_gate(stats, graph, month, model.config().abnormal_threshold, gate_opts);

  RunOptions options;
  options.self_check_enabled = true;
  options.failure_count = gate.failure_count;
  options.train_bucket = start_bucket;
  const RunResult result = run_atdsc(learner, model, options);
  const RouteEval ev =
      eval_route(result.best_route, learner.time_budget_minutes, model, start_bucket);

  std::ostringstream out;
  out << "route:";
  for (ZoneId z : result.best_route.zones) out << " " << z;
  out << "\n";
  out << "legs:\n";
  for (const LegEval& leg : ev.legs)
    out << "  " << leg.pickup << " -> " << leg.next_pickup << "  delivery_min="
        << leg.delivery_minutes << " cruise_min=" << leg.cruise_minutes
        << " p_gr=" << leg.p_gr << " expected_usd=" << leg.expected_earning << "\n";
  out << "expected_profit_usd: " << ev.profit << "\n";
  out << "occupancy_rate: " << ev.occupancy() << "\n";
  out << "failure_count: " << gate.failure_count << " (gate=" << gate.gate << ")\n";
  out << "restarts: " << result.restarts << "\n";
  return out.str();
}

void cmd_benchmark(const RunConfig& config, const std::string& stats_dir,
                   const std::string& out_dir) {
  const auto env_ptr = load_env(config, stats_dir);
  const LoadedEnv& env = *env_ptr;
  BenchmarkOptions options = config.benchmark_options();
  MlpModel gate_model;
  if (!options.rule_only) {
    // Gate classifier trained on the fly from rule-labeled perturbations.
    const auto dataset =
        make_training_set(static_cast<int>(env.graph.zone_count()),
                          static_cast<int>(config.get_long("mlp_train_samples")),
                          static_cast<std::uint64_t>(config.get_long("seed")),
                          config.get_double("abnormal_threshold"));
    gate_model = mlp_train(dataset, config.mlp_config());
    options.gate_model = &gate_model;
  }
  const BenchmarkReport report = benchmark_suite(env.stats, env.graph, *env.model, options);

  fs::create_directories(out_dir);
  {
    std::ofstream out(fs::path(out_dir) / "report.csv", std::ios::binary);
    if (!out) throw UsageError("cannot write report.csv under " + out_dir);
    write_report_csv(report, out);
  }
  {
    std::ofstream out(fs::path(out_dir) / "report_long.csv", std::ios::binary);
    write_report_long_csv(report, out);
  }
  {
    std::ofstream out(fs::path(out_dir) / "run_log.csv", std::ios::binary);
    write_run_log_csv(report, out);
  }
}

std::string cmd_report(const std::string& report_csv, const std::string& long_out) {
  std::ifstream in(report_csv);
  if (!in) throw UsageError("cannot read report file " + report_csv);
  std::ostringstream summary;
  std::string line;
  std::getline(in, line);  // header
  std::ostringstream long_rows;
  long_rows << "method,month,day_kind,metric,value\n";
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string method, month, dk, metric, value, stderr_s;
    if (!std::getline(ss, method, ',') || !std::getline(ss, month, ',') ||
        !std::getline(ss, dk, ',') || !std::getline(ss, metric, ',') ||
        !std::getline(ss, value, ',') || !std::getline(ss, stderr_s, ','))
      continue;
    long_rows << method << "," << month << "," << dk << "," << metric << "," << value << "\n";
    if (metric == "weekly_income" || metric == "occupancy_rate" || metric == "log_improvement")
      summary << method << " month=" << month << " " << metric << "=" << value << "\n";
  }
  if (!long_out.empty()) {
    std::ofstream out(long_out, std::ios::binary);
    if (!out) throw UsageError("cannot write " + long_out);
    out << long_rows.str();
  }
  return summary.str();
}

}  // namespace atdsc

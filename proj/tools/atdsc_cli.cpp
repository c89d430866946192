// Command-line front end for the route recommendation engine. Talks to the
// core exclusively through the C API so it exercises the same surface that
// external embedders use.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atdsc.h"

namespace {

struct CtxDeleter {
  void operator()(atdsc_ctx* c) const { atdsc_ctx_free(c); }
};
using CtxPtr = std::unique_ptr<atdsc_ctx, CtxDeleter>;

struct StrDeleter {
  void operator()(char* s) const { atdsc_string_free(s); }
};
using StrPtr = std::unique_ptr<char, StrDeleter>;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  long long seed = -1;
  int jobs = 0;
  std::string metric;
  bool fixed_fc = false;
  bool rule_only = false;
  bool adaptive_fc = false;
  bool mlp_gate = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "key=value configuration file");
  cmd->add_option("--set", o.sets, "override a single configuration key (key=value)");
  cmd->add_option("--seed", o.seed, "master random seed");
  cmd->add_option("--jobs", o.jobs, "worker threads (0 = hardware default)");
  cmd->add_option("--metric", o.metric, "objective: income or occupancy")
      ->check(CLI::IsMember({"income", "occupancy"}));
  auto* fixed = cmd->add_flag("--fixed-fc", o.fixed_fc, "keep the failure count fixed");
  cmd->add_flag("--adaptive-fc", o.adaptive_fc, "scale the failure count from demand data")
      ->excludes(fixed);
  auto* rule = cmd->add_flag("--rule-only", o.rule_only, "use the rule gate (no model)");
  cmd->add_flag("--mlp-gate", o.mlp_gate, "use the learned gate model")->excludes(rule);
}

// Returns 0 on success, otherwise the process exit code.
int apply_common(atdsc_ctx* ctx, const CommonOpts& o) {
  auto set = [&](const char* k, const std::string& v) {
    return atdsc_config_set(ctx, k, v.c_str());
  };
  if (!o.config_path.empty()) {
    atdsc_status st = atdsc_config_load(ctx, o.config_path.c_str());
    if (st != ATDSC_OK) return static_cast<int>(st);
  }
  for (const std::string& kv : o.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return 2;
    }
    atdsc_status st = atdsc_config_set(ctx, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != ATDSC_OK) return static_cast<int>(st);
  }
  if (o.seed >= 0 && set("seed", std::to_string(o.seed)) != ATDSC_OK) return 2;
  if (o.jobs > 0 && set("jobs", std::to_string(o.jobs)) != ATDSC_OK) return 2;
  if (!o.metric.empty() && set("metric", o.metric) != ATDSC_OK) return 2;
  if (o.fixed_fc && set("fixed_fc", "true") != ATDSC_OK) return 2;
  if (o.adaptive_fc && set("fixed_fc", "false") != ATDSC_OK) return 2;
  if (o.rule_only && set("rule_only", "true") != ATDSC_OK) return 2;
  if (o.mlp_gate && set("rule_only", "false") != ATDSC_OK) return 2;
  return 0;
}

int finish(atdsc_ctx* ctx, atdsc_status st) {
  if (st != ATDSC_OK) {
    const char* msg = atdsc_last_error(ctx);
    std::fprintf(stderr, "error: %s\n", msg && *msg ? msg : "unknown failure");
  }
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive temporal-difference taxi route recommendation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::to_string(atdsc_version()));

  CtxPtr ctx(atdsc_ctx_new());
  if (!ctx) {
    std::fprintf(stderr, "error: failed to allocate context\n");
    return 1;
  }

  struct {
    std::string out_dir;
  } synth;
  struct {
    std::string trips, adjacency, prior, out_dir;
  } ingest;
  struct {
    std::string stats_dir, model_out;
  } train;
  struct {
    std::string stats_dir;
  } recommend;
  struct {
    std::string stats_dir, out_dir;
  } bench;
  struct {
    std::string report_csv, long_out;
  } report;

  CommonOpts common;

  auto* c_synth = app.add_subcommand("synth", "generate a synthetic trip corpus");
  c_synth->add_option("--out", synth.out_dir, "output directory")->required();
  add_common(c_synth, common);

  auto* c_ingest = app.add_subcommand("ingest", "build a demand snapshot from trip records");
  c_ingest->add_option("--trips", ingest.trips, "trip record CSV")->required();
  c_ingest->add_option("--adjacency", ingest.adjacency, "zone adjacency file")->required();
  c_ingest->add_option("--prior", ingest.prior, "prior pickup counts CSV");
  c_ingest->add_option("--out", ingest.out_dir, "snapshot output directory")->required();
  add_common(c_ingest, common);

  auto* c_train = app.add_subcommand("train-anomaly", "train the demand anomaly gate model");
  c_train->add_option("--stats", train.stats_dir, "snapshot directory (sets the zone count)");
  c_train->add_option("--model-out", train.model_out, "model output path")->required();
  add_common(c_train, common);

  auto* c_rec = app.add_subcommand("recommend", "learn and print a cruising route");
  c_rec->add_option("--stats", recommend.stats_dir, "snapshot directory")->required();
  add_common(c_rec, common);

  auto* c_bench = app.add_subcommand("benchmark", "compare the learner against baselines");
  c_bench->add_option("--stats", bench.stats_dir, "snapshot directory")->required();
  c_bench->add_option("--out", bench.out_dir, "report output directory")->required();
  add_common(c_bench, common);

  auto* c_report = app.add_subcommand("report", "summarize a benchmark report");
  c_report->add_option("--report", report.report_csv, "report.csv from a benchmark run")->required();
  c_report->add_option("--long-out", report.long_out, "optional long-format CSV output");
  add_common(c_report, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (int rc = apply_common(ctx.get(), common); rc != 0) {
    const char* msg = atdsc_last_error(ctx.get());
    if (msg && *msg) std::fprintf(stderr, "error: %s\n", msg);
    return rc;
  }

  if (c_synth->parsed()) {
    return finish(ctx.get(), atdsc_synth(ctx.get(), synth.out_dir.c_str()));
  }
  if (c_ingest->parsed()) {
    return finish(ctx.get(),
                  atdsc_ingest(ctx.get(), ingest.trips.c_str(), ingest.adjacency.c_str(),
                               ingest.prior.empty() ? nullptr : ingest.prior.c_str(),
                               ingest.out_dir.c_str()));
  }
  if (c_train->parsed()) {
    char* summary = nullptr;
    atdsc_status st =
        atdsc_train_anomaly(ctx.get(), train.stats_dir.empty() ? nullptr : train.stats_dir.c_str(),
                            train.model_out.c_str(), &summary);
    StrPtr owned(summary);
    if (st == ATDSC_OK && owned) std::printf("%s\n", owned.get());
    return finish(ctx.get(), st);
  }
  if (c_rec->parsed()) {
    char* text = nullptr;
    atdsc_status st = atdsc_recommend(ctx.get(), recommend.stats_dir.c_str(), &text);
    StrPtr owned(text);
    if (st == ATDSC_OK && owned) std::printf("%s", owned.get());
    return finish(ctx.get(), st);
  }
  if (c_bench->parsed()) {
    return finish(ctx.get(), atdsc_benchmark(ctx.get(), bench.stats_dir.c_str(),
                                             bench.out_dir.c_str()));
  }
  if (c_report->parsed()) {
    char* summary = nullptr;
    atdsc_status st = atdsc_report(ctx.get(), report.report_csv.c_str(),
                                   report.long_out.empty() ? nullptr : report.long_out.c_str(),
                                   &summary);
    StrPtr owned(summary);
    if (st == ATDSC_OK && owned) std::printf("%s", owned.get());
    return finish(ctx.get(), st);
  }
  return 2;
}

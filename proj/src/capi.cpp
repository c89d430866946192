#include "atdsc.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "atdsc/pipeline.hpp"

struct atdsc_ctx {
  atdsc::RunConfig config;
  std::string last_error;
  std::string last_get;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
atdsc_status guarded(atdsc_ctx* ctx, Fn&& fn) {
  if (!ctx) return ATDSC_ERR_USAGE;
  try {
    fn();
    ctx->last_error.clear();
    return ATDSC_OK;
  } catch (const atdsc::UsageError& e) {
    ctx->last_error = e.what();
    return ATDSC_ERR_USAGE;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return ATDSC_ERR_RUNTIME;
  }
}

std::string arg(const char* s) { return s ? std::string(s) : std::string(); }

}  // namespace

extern "C" {

unsigned atdsc_version(void) { return 10000; }

atdsc_ctx* atdsc_ctx_new(void) {
  try {
    return new atdsc_ctx();
  } catch (...) {
    return nullptr;
  }
}

void atdsc_ctx_free(atdsc_ctx* ctx) { delete ctx; }

const char* atdsc_last_error(const atdsc_ctx* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

atdsc_status atdsc_config_load(atdsc_ctx* ctx, const char* path) {
  return guarded(ctx, [&] {
    if (!path) throw atdsc::UsageError("config path is null");
    ctx->config.load_file(path);
  });
}

atdsc_status atdsc_config_set(atdsc_ctx* ctx, const char* key, const char* value) {
  return guarded(ctx, [&] {
    if (!key || !value) throw atdsc::UsageError("config key/value is null");
    ctx->config.set(key, value);
  });
}

const char* atdsc_config_get(atdsc_ctx* ctx, const char* key) {
  if (!ctx || !key || !ctx->config.has(key)) return nullptr;
  ctx->last_get = ctx->config.get(key);
  return ctx->last_get.c_str();
}

atdsc_status atdsc_synth(atdsc_ctx* ctx, const char* out_dir) {
  return guarded(ctx, [&] {
    if (!out_dir) throw atdsc::UsageError("output directory is null");
    atdsc::cmd_synth(ctx->config, out_dir);
  });
}

atdsc_status atdsc_ingest(atdsc_ctx* ctx, const char* trips_path, const char* adjacency_path,
                          const char* prior_path, const char* out_dir) {
  return guarded(ctx, [&] {
    if (!trips_path || !adjacency_path || !out_dir)
      throw atdsc::UsageError("trips, adjacency, and output paths are required");
    atdsc::cmd_ingest(ctx->config, trips_path, adjacency_path, arg(prior_path), out_dir);
  });
}

atdsc_status atdsc_train_anomaly(atdsc_ctx* ctx, const char* stats_dir, const char* model_out,
                                 char** summary_out) {
  return guarded(ctx, [&] {
    if (!model_out) throw atdsc::UsageError("model output path is null");
    std::string summary;
    atdsc::cmd_train_anomaly(ctx->config, arg(stats_dir), model_out,
                             summary_out ? &summary : nullptr);
    if (summary_out) *summary_out = dup_string(summary);
  });
}

atdsc_status atdsc_recommend(atdsc_ctx* ctx, const char* stats_dir, char** text_out) {
  return guarded(ctx, [&] {
    if (!stats_dir || !text_out) throw atdsc::UsageError("stats directory and output are required");
    *text_out = dup_string(atdsc::cmd_recommend(ctx->config, stats_dir));
  });
}

atdsc_status atdsc_benchmark(atdsc_ctx* ctx, const char* stats_dir, const char* out_dir) {
  return guarded(ctx, [&] {
    if (!stats_dir || !out_dir)
      throw atdsc::UsageError("stats directory and output directory are required");
    atdsc::cmd_benchmark(ctx->config, stats_dir, out_dir);
  });
}

atdsc_status atdsc_report(atdsc_ctx* ctx, const char* report_csv, const char* long_out,
                          char** summary_out) {
  return guarded(ctx, [&] {
    if (!report_csv) throw atdsc::UsageError("report path is null");
    const std::string summary = atdsc::cmd_report(report_csv, arg(long_out));
    if (summary_out) *summary_out = dup_string(summary);
  });
}

void atdsc_string_free(char* s) { std::free(s); }

}  // extern "C"

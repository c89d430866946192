#pragma once

#include <string>

#include "atdsc/config.hpp"

namespace atdsc {

// Command implementations shared by the C API and tests.

void cmd_synth(const RunConfig& config, const std::string& out_dir);

void cmd_ingest(const RunConfig& config, const std::string& trips_path,
                const std::string& adjacency_path, const std::string& prior_path,
                const std::string& out_dir);

void cmd_train_anomaly(const RunConfig& config, const std::string& stats_dir,
                       const std::string& model_out, std::string* summary);

std::string cmd_recommend(const RunConfig& config, const std::string& stats_dir);

void cmd_benchmark(const RunConfig& config, const std::string& stats_dir,
                   const std::string& out_dir);

std::string cmd_report(const std::string& report_csv, const std::string& long_out);

}  // namespace atdsc

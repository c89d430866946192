#pragma once

#include <map>
#include <string>

#include "atdsc/anomaly.hpp"
#include "atdsc/bench.hpp"
#include "atdsc/learner.hpp"
#include "atdsc/mdp.hpp"
#include "atdsc/synth.hpp"

namespace atdsc {

// Flat key=value configuration with command-line overrides. Every
// default matches the reference parameterization: omega=0.1,
// alpha1=alpha2=0.5, beta=0.1, c=8, gamma=0.9, eta=0.01, decay=0.01,
// iterations=300000, lambda=0.5, q=30.
class RunConfig {
 public:
  RunConfig();

  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_long(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  MdpConfig mdp_config() const;
  LearnerConfig learner_config() const;
  FailureCountConfig failure_config() const;
  MlpTrainConfig mlp_config() const;
  SynthSpec synth_spec() const;
  BucketConfig bucket_config() const;
  CruiseDefaults cruise_defaults() const;
  BenchmarkOptions benchmark_options() const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace atdsc

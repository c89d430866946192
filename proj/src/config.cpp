#include "atdsc/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace atdsc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

RewardMetric parse_metric(const std::string& value) {
  if (value == "income") return RewardMetric::Income;
  if (value == "occupancy") return RewardMetric::Occupancy;
  throw UsageError("metric must be 'income' or 'occupancy', got '" + value + "'");
}

}  // namespace

RunConfig::RunConfig() {
  values_ = {
      {"alpha1", "0.5"},
      {"alpha2", "0.5"},
      {"beta", "0.1"},
      {"omega_abnormal", "0.1"},
      {"lambda", "0.5"},
      {"abnormal_threshold", "0.8"},
      {"gamma", "0.9"},
      {"eta", "0.01"},
      {"eta_decay", "0.01"},
      {"iterations", "300000"},
      {"tau", "1000"},
      {"time_budget_minutes", "600"},
      {"start_zone", "1"},
      {"seed", "1"},
      {"c", "8"},
      {"q", "30"},
      {"jobs", "1"},
      {"metric", "income"},
      {"fixed_fc", "false"},
      {"rule_only", "true"},
      {"start_hour", "0"},
      {"day_kinds", "2"},
      {"months", "6"},
      {"mu_cruise", "10"},
      {"sigma_cruise", "4"},
      {"synth_zones", "10"},
      {"synth_base_demand", "40"},
      {"synth_demand_factor", "1.0"},
      {"synth_peaked_hours", "true"},
      {"synth_base_minute_income", "1.3"},
      {"synth_mu_delivery", "15"},
      {"synth_sigma_delivery", "3"},
      {"mlp_hidden", "32"},
      {"mlp_learning_rate", "0.05"},
      {"mlp_epochs", "200"},
      {"mlp_batch_size", "16"},
      {"mlp_train_samples", "2000"},
      {"sample_dropoff", "false"},
      {"allow_unconnected_actions", "false"},
      {"epsilon", "0"},
  };
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    set(trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!values_.count(key)) throw UsageError("unknown configuration key '" + key + "'");
  values_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) != 0; }

std::string RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown configuration key '" + key + "'");
  return it->second;
}

double RunConfig::get_double(const std::string& key) const {
  try {
    return std::stod(get(key));
  } catch (const std::exception&) {
    throw UsageError("configuration key '" + key + "' is not a number");
  }
}

long RunConfig::get_long(const std::string& key) const {
  try {
    return std::stol(get(key));
  } catch (const std::exception&) {
    throw UsageError("configuration key '" + key + "' is not an integer");
  }
}

bool RunConfig::get_bool(const std::string& key) const {
  std::string v = get(key);
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("configuration key '" + key + "' is not a boolean");
}

MdpConfig RunConfig::mdp_config() const {
  MdpConfig cfg;
  cfg.alpha1 = get_double("alpha1");
  cfg.alpha2 = get_double("alpha2");
  cfg.beta = get_double("beta");
  cfg.omega_abnormal = get_double("omega_abnormal");
  cfg.lambda = get_double("lambda");
  cfg.abnormal_threshold = get_double("abnormal_threshold");
  cfg.sample_dropoff = get_bool("sample_dropoff");
  cfg.validate();
  return cfg;
}

LearnerConfig RunConfig::learner_config() const {
  LearnerConfig cfg;
  cfg.gamma = get_double("gamma");
  cfg.eta = get_double("eta");
  cfg.eta_decay = get_double("eta_decay");
  cfg.iterations = get_long("iterations");
  cfg.tau = get_long("tau");
  cfg.time_budget_minutes = get_double("time_budget_minutes");
  cfg.start_zone = static_cast<ZoneId>(get_long("start_zone"));
  cfg.seed = static_cast<std::uint64_t>(get_long("seed"));
  cfg.metric = parse_metric(get("metric"));
  cfg.allow_unconnected_actions = get_bool("allow_unconnected_actions");
  cfg.epsilon = get_double("epsilon");
  cfg.validate();
  return cfg;
}

FailureCountConfig RunConfig::failure_config() const {
  FailureCountConfig cfg;
  cfg.c = static_cast<int>(get_long("c"));
  if (cfg.c < 1) throw UsageError("c must be >= 1");
  return cfg;
}

MlpTrainConfig RunConfig::mlp_config() const {
  MlpTrainConfig cfg;
  cfg.hidden = static_cast<int>(get_long("mlp_hidden"));
  cfg.learning_rate = get_double("mlp_learning_rate");
  cfg.epochs = static_cast<int>(get_long("mlp_epochs"));
  cfg.batch_size = static_cast<int>(get_long("mlp_batch_size"));
  cfg.seed = static_cast<std::uint64_t>(get_long("seed"));
  return cfg;
}

BucketConfig RunConfig::bucket_config() const {
  BucketConfig cfg;
  cfg.day_kinds = static_cast<int>(get_long("day_kinds"));
  if (cfg.day_kinds != 2 && cfg.day_kinds != 7)
    throw UsageError("day_kinds must be 2 (weekday/weekend) or 7");
  cfg.months.clear();
  std::stringstream ss(get("months"));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int m = std::stoi(tok);
    if (m < 1 || m > 12) throw UsageError("month out of range in 'months'");
    cfg.months.push_back(m);
  }
  std::sort(cfg.months.begin(), cfg.months.end());
  cfg.months.erase(std::unique(cfg.months.begin(), cfg.months.end()), cfg.months.end());
  if (cfg.months.empty()) throw UsageError("'months' must name at least one month");
  return cfg;
}

CruiseDefaults RunConfig::cruise_defaults() const {
  CruiseDefaults cfg;
  cfg.mu = get_double("mu_cruise");
  cfg.sigma = get_double("sigma_cruise");
  if (cfg.mu <= 0.0 || cfg.sigma <= 0.0) throw UsageError("cruise statistics must be positive");
  return cfg;
}

SynthSpec RunConfig::synth_spec() const {
  SynthSpec spec;
  spec.zones = static_cast<int>(get_long("synth_zones"));
  spec.bucketing = bucket_config();
  spec.seed = static_cast<std::uint64_t>(get_long("seed"));
  spec.base_demand = get_double("synth_base_demand");
  spec.demand_factor = get_double("synth_demand_factor");
  spec.peaked_hours = get_bool("synth_peaked_hours");
  spec.base_minute_income = get_double("synth_base_minute_income");
  spec.mu_delivery = get_double("synth_mu_delivery");
  spec.sigma_delivery = get_double("synth_sigma_delivery");
  return spec;
}

BenchmarkOptions RunConfig::benchmark_options() const {
  BenchmarkOptions opts;
  opts.runs = static_cast<int>(get_long("q"));
  opts.seed = static_cast<std::uint64_t>(get_long("seed"));
  opts.jobs = static_cast<int>(get_long("jobs"));
  opts.metric = parse_metric(get("metric"));
  opts.fixed_failure_count = get_bool("fixed_fc");
  opts.rule_only = get_bool("rule_only");
  opts.failure_config = failure_config();
  opts.learner = learner_config();
  opts.start_hour = static_cast<int>(get_long("start_hour"));
  if (opts.start_hour < 0 || opts.start_hour > 23) throw UsageError("start_hour must be 0..23");
  return opts;
}

}  // namespace atdsc

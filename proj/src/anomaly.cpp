#include "atdsc/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

namespace atdsc {

namespace {

std::vector<double> minmax_normalize(const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  if (v.empty()) return out;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = span > 0.0 ? (v[i] - *lo) / span : 1.0;
  return out;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::vector<double> AnomalyFeatures::flat() const {
  std::vector<double> out = current;
  out.insert(out.end(), prior.begin(), prior.end());
  return out;
}

AnomalyFeatures make_features(const std::vector<double>& current_raw,
                              const std::vector<double>& prior_raw) {
  if (current_raw.size() != prior_raw.size())
    throw UsageError("feature vectors must have equal length");
  return {minmax_normalize(current_raw), minmax_normalize(prior_raw)};
}

int rule_label(const std::vector<double>& current, const std::vector<double>& prior,
               double threshold) {
  if (current.size() != prior.size())
    throw UsageError("rule_label: vectors must have equal length");
  const std::size_t m = current.size();
  std::size_t abnormal = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (current[i] < threshold * prior[i]) ++abnormal;
  return 2 * abnormal > m ? 1 : 0;
}

MlpModel::MlpModel(int inputs, int hidden, std::uint64_t seed)
    : inputs_(inputs), hidden_(hidden) {
  if (inputs <= 0 || hidden <= 0) throw UsageError("mlp dimensions must be positive");
  std::mt19937_64 rng(seed);
  const double r1 = std::sqrt(6.0 / (inputs + hidden));
  const double r2 = std::sqrt(6.0 / (hidden + 1));
  std::uniform_real_distribution<double> u1(-r1, r1), u2(-r2, r2);
  w1_.resize(static_cast<std::size_t>(hidden) * inputs);
  b1_.assign(hidden, 0.0);
  w2_.resize(hidden);
  for (double& w : w1_) w = u1(rng);
  for (double& w : w2_) w = u2(rng);
}

void MlpModel::forward_internals(const std::vector<double>& x, std::vector<double>& h,
                                 double& y) const {
  if (static_cast<int>(x.size()) != inputs_)
    throw UsageError("mlp input length mismatch: got " + std::to_string(x.size()) + ", expected " +
                     std::to_string(inputs_));
  h.assign(hidden_, 0.0);
  for (int j = 0; j < hidden_; ++j) {
    double z = b1_[j];
    const double* row = &w1_[static_cast<std::size_t>(j) * inputs_];
    for (int i = 0; i < inputs_; ++i) z += row[i] * x[i];
    h[j] = std::max(0.0, z);
  }
  double z = b2_;
  for (int j = 0; j < hidden_; ++j) z += w2_[j] * h[j];
  y = sigmoid(z);
}

double MlpModel::forward(const std::vector<double>& x) const {
  std::vector<double> h;
  double y = 0.0;
  forward_internals(x, h, y);
  return y;
}

double MlpModel::loss(const std::vector<double>& x, int label) const {
  const double y = forward(x);
  const double eps = 1e-12;
  return label == 1 ? -std::log(y + eps) : -std::log(1.0 - y + eps);
}

std::vector<double> MlpModel::gradient(const std::vector<double>& x, int label) const {
  std::vector<double> h;
  double y = 0.0;
  forward_internals(x, h, y);
  // d(BCE)/dz_out = y - label for the logistic output.
  const double dz = y - static_cast<double>(label);

  std::vector<double> grad(params().size(), 0.0);
  std::size_t off = 0;
  // w1 then b1 then w2 then b2, matching params().
  for (int j = 0; j < hidden_; ++j) {
    const double dh = h[j] > 0.0 ? dz * w2_[j] : 0.0;
    for (int i = 0; i < inputs_; ++i) grad[off + static_cast<std::size_t>(j) * inputs_ + i] = dh * x[i];
  }
  off += w1_.size();
  for (int j = 0; j < hidden_; ++j) grad[off + j] = h[j] > 0.0 ? dz * w2_[j] : 0.0;
  off += b1_.size();
  for (int j = 0; j < hidden_; ++j) grad[off + j] = dz * h[j];
  off += w2_.size();
  grad[off] = dz;
  return grad;
}

std::vector<double> MlpModel::params() const {
  std::vector<double> p;
  p.reserve(w1_.size() + b1_.size() + w2_.size() + 1);
  p.insert(p.end(), w1_.begin(), w1_.end());
  p.insert(p.end(), b1_.begin(), b1_.end());
  p.insert(p.end(), w2_.begin(), w2_.end());
  p.push_back(b2_);
  return p;
}

void MlpModel::set_params(const std::vector<double>& p) {
  if (p.size() != w1_.size() + b1_.size() + w2_.size() + 1)
    throw UsageError("mlp parameter count mismatch");
  std::size_t off = 0;
  std::copy(p.begin(), p.begin() + w1_.size(), w1_.begin());
  off += w1_.size();
  std::copy(p.begin() + off, p.begin() + off + b1_.size(), b1_.begin());
  off += b1_.size();
  std::copy(p.begin() + off, p.begin() + off + w2_.size(), w2_.begin());
  off += w2_.size();
  b2_ = p[off];
}

void MlpModel::save(std::ostream& out) const {
  out << "ATDSCMLP 1\n" << inputs_ << " " << hidden_ << "\n";
  char buf[40];
  for (double v : params()) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    out << buf;
  }
}

MlpModel MlpModel::load(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "ATDSCMLP" || version != 1)
    throw UsageError("not a recognized mlp model file");
  int inputs = 0, hidden = 0;
  if (!(in >> inputs >> hidden)) throw UsageError("truncated mlp model file");
  MlpModel model(inputs, hidden, 0);
  std::vector<double> p(model.params().size());
  for (double& v : p)
    if (!(in >> v)) throw UsageError("truncated mlp model file");
  model.set_params(p);
  return model;
}

MlpModel mlp_train(const std::vector<Sample>& dataset, const MlpTrainConfig& config,
                   TrainReport* report) {
  if (dataset.empty()) throw UsageError("mlp training set is empty");
  bool has_pos = false, has_neg = false;
  for (const Sample& s : dataset) (s.label == 1 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw UsageError("mlp training set holds a single class; both labels are required");

  const int inputs = static_cast<int>(dataset.front().features.size());
  MlpModel model(inputs, config.hidden, config.seed);

  // Hold out the last 10% (at least one sample) for validation.
  const std::size_t holdout = std::max<std::size_t>(1, dataset.size() / 10);
  const std::size_t train_n = dataset.size() - holdout;

  std::mt19937_64 rng(mix_seed(config.seed, 0x7261696eull));
  std::vector<std::size_t> order(train_n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> params = model.params();
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double eta = config.learning_rate / (1.0 + config.decay * epoch);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < train_n; start += config.batch_size) {
      const std::size_t end = std::min(train_n, start + config.batch_size);
      std::vector<double> grad(params.size(), 0.0);
      for (std::size_t k = start; k < end; ++k) {
        const Sample& s = dataset[order[k]];
        const auto g = model.gradient(s.features, s.label);
        for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += g[i];
      }
      const double scale = eta / static_cast<double>(end - start);
      for (std::size_t i = 0; i < params.size(); ++i) params[i] -= scale * grad[i];
      model.set_params(params);
    }
  }

  if (report) {
    long train_hits = 0, val_hits = 0;
    double loss = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      const Sample& s = dataset[i];
      if (model.classify(s.features) == s.label) (i < train_n ? train_hits : val_hits)++;
      loss += model.loss(s.features, s.label);
    }
    report->train_accuracy = static_cast<double>(train_hits) / train_n;
    report->validation_accuracy = static_cast<double>(val_hits) / holdout;
    report->final_loss = loss / dataset.size();
  }
  return model;
}

std::vector<Sample> make_training_set(int zones, int samples, std::uint64_t seed,
                                      double threshold) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // One city has one prior-year profile; it depends on the zone count only
  // so that differently seeded sample sets describe the same city.
  std::mt19937_64 prior_rng(mix_seed(0x70726f66696c65ull, static_cast<std::uint64_t>(zones)));
  std::vector<double> prior(zones);
  for (int z = 0; z < zones; ++z) prior[z] = 100.0 + 100.0 * unit(prior_rng);

  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  out.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    // Severity controls how many zones drop below the threshold; sweeping
    // it over [0,1] yields both labels. Ratio bands keep a wide margin on
    // either side of the threshold: depressed zones lose 40-85% of their
    // demand, normal zones track the prior within 5%.
    const double severity = unit(rng);
    std::vector<double> current(zones);
    for (int z = 0; z < zones; ++z) {
      const bool depressed = unit(rng) < severity;
      const double ratio = depressed ? 0.15 + 0.45 * unit(rng) : 0.95 + 0.1 * unit(rng);
      current[z] = prior[z] * ratio;
    }
    Sample s;
    s.label = rule_label(current, prior, threshold);
    s.features = make_features(current, prior).flat();
    out.push_back(std::move(s));
  }
  return out;
}

int failure_count(int gate, int n_normal, int zones, const FailureCountConfig& config) {
  if (config.c < 1) throw UsageError("failure count default c must be >= 1");
  if (zones <= 0) throw UsageError("failure_count: zone count must be positive");
  if (gate == 0) return config.c;
  const double ratio = static_cast<double>(n_normal) / zones;
  const double raw = config.c * std::cbrt(ratio);
  return std::max(1, static_cast<int>(std::floor(raw + 0.5)));
}

}  // namespace atdsc

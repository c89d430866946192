#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "atdsc/types.hpp"

namespace atdsc {

// Features for the gate classifier: current and prior-year per-zone
// average successful pickups, each min-max normalized.
struct AnomalyFeatures {
  std::vector<double> current;  // length M, in [0,1]
  std::vector<double> prior;    // length M, in [0,1]

  std::vector<double> flat() const;
};

AnomalyFeatures make_features(const std::vector<double>& current_raw,
                              const std::vector<double>& prior_raw);

// Deterministic labeling rule the classifier is trained against: 1 iff
// more than half of the zones fall below threshold * prior.
int rule_label(const std::vector<double>& current, const std::vector<double>& prior,
               double threshold = 0.8);

struct MlpTrainConfig {
  int hidden = 32;
  double learning_rate = 0.05;
  double decay = 0.01;  // per-epoch step-size decay: eta_e = learning_rate / (1 + decay * e)
  int epochs = 200;
  int batch_size = 16;
  std::uint64_t seed = 7;
};

// One hidden layer, rectifier units, logistic output.
class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(int inputs, int hidden, std::uint64_t seed);

  int inputs() const { return inputs_; }
  int hidden() const { return hidden_; }

  double forward(const std::vector<double>& x) const;
  int classify(const std::vector<double>& x) const { return forward(x) >= 0.5 ? 1 : 0; }

  // Binary cross-entropy loss and its gradient with respect to all
  // parameters, in the same order as params().
  double loss(const std::vector<double>& x, int label) const;
  std::vector<double> gradient(const std::vector<double>& x, int label) const;

  std::vector<double> params() const;
  void set_params(const std::vector<double>& p);

  void save(std::ostream& out) const;
  static MlpModel load(std::istream& in);

 private:
  int inputs_ = 0;
  int hidden_ = 0;
  std::vector<double> w1_;  // hidden x inputs, row-major
  std::vector<double> b1_;
  std::vector<double> w2_;  // 1 x hidden
  double b2_ = 0.0;

  void forward_internals(const std::vector<double>& x, std::vector<double>& h, double& y) const;
};

struct Sample {
  std::vector<double> features;
  int label = 0;
};

struct TrainReport {
  double train_accuracy = 0.0;
  double validation_accuracy = 0.0;
  double final_loss = 0.0;
};

// Mini-batch gradient descent on binary cross-entropy. Fatal when the
// dataset holds a single class. Deterministic given the seed.
MlpModel mlp_train(const std::vector<Sample>& dataset, const MlpTrainConfig& config,
                   TrainReport* report = nullptr);

// Synthetic perturbation dataset labeled by rule_label: bootstrap-style
// per-zone scaling around a stable prior profile.
std::vector<Sample> make_training_set(int zones, int samples, std::uint64_t seed,
                                      double threshold = 0.8);

struct FailureCountConfig {
  int c = 8;
};

// Adaptive failure count: c when the gate is closed, otherwise
// c * (n_normal / zones)^(1/3) rounded half up with floor 1.
int failure_count(int gate, int n_normal, int zones, const FailureCountConfig& config);

}  // namespace atdsc

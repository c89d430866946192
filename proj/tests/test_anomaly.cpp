#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "atdsc/anomaly.hpp"

using namespace atdsc;

namespace {

std::vector<double> constant(int n, double v) { return std::vector<double>(n, v); }

}  // namespace

TEST_CASE("rule fires only on a strict majority of depressed zones") {
  std::vector<double> prior = constant(10, 100.0);
  SUBCASE("six of ten") {
    std::vector<double> current = constant(10, 100.0);
    for (int i = 0; i < 6; ++i) current[i] = 50.0;
    CHECK(rule_label(current, prior) == 1);
  }
  SUBCASE("exactly half is not a majority") {
    std::vector<double> current = constant(10, 100.0);
    for (int i = 0; i < 5; ++i) current[i] = 50.0;
    CHECK(rule_label(current, prior) == 0);
  }
}

TEST_CASE("uniformly depressed demand is labeled anomalous") {
  const auto prior = constant(12, 80.0);
  auto current = prior;
  for (double& c : current) c *= 0.1;
  CHECK(rule_label(current, prior) == 1);
}

TEST_CASE("rule is invariant to a common positive scale") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(10.0, 200.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> prior(8), current(8);
    for (int i = 0; i < 8; ++i) {
      prior[i] = u(rng);
      current[i] = u(rng);
    }
    const int base = rule_label(current, prior);
    for (double k : {0.25, 3.0, 17.5}) {
      auto cs = current, ps = prior;
      for (double& x : cs) x *= k;
      for (double& x : ps) x *= k;
      CHECK(rule_label(cs, ps) == base);
    }
  }
}

TEST_CASE("feature normalization lands in the unit interval") {
  const AnomalyFeatures f = make_features({5.0, 10.0, 20.0}, {100.0, 50.0, 75.0});
  for (double v : f.current) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  for (double v : f.prior) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK(f.flat().size() == 6);
}

TEST_CASE("zeroed network outputs one half") {
  MlpModel m(4, 8, 1);
  std::vector<double> zeros(m.params().size(), 0.0);
  m.set_params(zeros);
  CHECK(m.forward({0.1, 0.2, 0.3, 0.4}) == doctest::Approx(0.5));
}

TEST_CASE("forward pass is deterministic") {
  const MlpModel m(6, 16, 9);
  const std::vector<double> x{0.1, 0.9, 0.4, 0.2, 0.7, 0.3};
  CHECK(m.forward(x) == m.forward(x));
  CHECK(m.forward(x) > 0.0);
  CHECK(m.forward(x) < 1.0);
}

TEST_CASE("dimension mismatch is fatal") {
  const MlpModel m(4, 8, 1);
  CHECK_THROWS_AS(m.forward({0.1, 0.2}), UsageError);
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MlpModel m(6, 10, 17);
  const double h = 1e-6;
  int checked = 0;
  for (int point = 0; point < 100; ++point) {
    std::vector<double> x(6);
    for (double& v : x) v = unit(rng);
    const int label = point % 2;
    auto params = m.params();
    // Jitter the parameters so each point probes a fresh location.
    for (double& p : params) p += 0.2 * (unit(rng) - 0.5);
    m.set_params(params);
    const auto grad = m.gradient(x, label);
    REQUIRE(grad.size() == params.size());
    // Spot-check a handful of coordinates per point.
    for (int k = 0; k < 6; ++k) {
      const std::size_t i = static_cast<std::size_t>(unit(rng) * params.size()) % params.size();
      auto plus = params, minus = params;
      plus[i] += h;
      minus[i] -= h;
      MlpModel mp = m, mm = m;
      mp.set_params(plus);
      mm.set_params(minus);
      const double numeric = (mp.loss(x, label) - mm.loss(x, label)) / (2.0 * h);
      const double denom = std::max({std::abs(numeric), std::abs(grad[i]), 1e-8});
      CHECK(std::abs(numeric - grad[i]) / denom < 1e-4);
      ++checked;
    }
  }
  CHECK(checked == 600);
}

TEST_CASE("training separates a linearly separable toy set") {
  std::vector<Sample> data;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = unit(rng), b = unit(rng);
    data.push_back({{a, b}, a + b > 1.0 ? 1 : 0});
  }
  MlpTrainConfig cfg;
  cfg.hidden = 16;
  cfg.epochs = 200;
  cfg.learning_rate = 1.0;
  TrainReport report;
  const MlpModel m = mlp_train(data, cfg, &report);
  CHECK(report.train_accuracy >= 0.99);
}

TEST_CASE("training is deterministic given the seed") {
  const auto data = make_training_set(6, 200, 13);
  MlpTrainConfig cfg;
  cfg.epochs = 30;
  const MlpModel a = mlp_train(data, cfg);
  const MlpModel b = mlp_train(data, cfg);
  CHECK(a.params() == b.params());
}

TEST_CASE("single class dataset is fatal") {
  std::vector<Sample> data;
  for (int i = 0; i < 10; ++i) data.push_back({{0.1, 0.2}, 1});
  CHECK_THROWS_AS(mlp_train(data, MlpTrainConfig{}), UsageError);
}

TEST_CASE("model serialization round trips") {
  const auto data = make_training_set(5, 150, 3);
  MlpTrainConfig cfg;
  cfg.epochs = 20;
  const MlpModel m = mlp_train(data, cfg);
  std::ostringstream out;
  m.save(out);
  std::istringstream in(out.str());
  const MlpModel back = MlpModel::load(in);
  CHECK(back.params() == m.params());
  CHECK(back.inputs() == m.inputs());
  CHECK(back.hidden() == m.hidden());
}

TEST_CASE("failure count follows the gate") {
  const FailureCountConfig cfg;
  SUBCASE("closed gate keeps the default") { CHECK(failure_count(0, 3, 24, cfg) == 8); }
  SUBCASE("exact cube root") { CHECK(failure_count(1, 1, 8, cfg) == 4); }
  SUBCASE("all zones normal") { CHECK(failure_count(1, 8, 8, cfg) == 8); }
  SUBCASE("floor of one") { CHECK(failure_count(1, 0, 8, cfg) == 1); }
}

TEST_CASE("failure count grows with the number of normal zones") {
  const FailureCountConfig cfg;
  int prev = 0;
  for (int n = 0; n <= 30; ++n) {
    const int fc = failure_count(1, n, 30, cfg);
    CHECK(fc >= prev);
    CHECK(fc >= 1);
    prev = fc;
  }
  CHECK(prev == 8);
}

TEST_CASE("perturbation training set carries both classes") {
  const auto data = make_training_set(10, 400, 21);
  int pos = 0;
  for (const Sample& s : data) pos += s.label;
  CHECK(pos > 50);
  CHECK(pos < 350);
  for (const Sample& s : data) CHECK(s.features.size() == 20);
}

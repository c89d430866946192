#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "atdsc/eval.hpp"
#include "atdsc/mdp.hpp"
#include "atdsc/types.hpp"

namespace atdsc {

struct LearnerConfig {
  double gamma = 0.9;
  double eta = 0.01;
  double eta_decay = 0.01;         // applied per 10k-iteration epoch
  long iterations = 300000;
  long tau = 1000;                 // self-check interval
  double time_budget_minutes = 600.0;
  ZoneId start_zone = 1;
  std::uint64_t seed = 1;
  RewardMetric metric = RewardMetric::Income;
  // When true, actions cover every zone instead of only graph neighbors.
  bool allow_unconnected_actions = false;
  // Optional epsilon-greedy behavior policy; the default (0) is the
  // uniform random behavior the update strategy prescribes.
  double epsilon = 0.0;

  void validate() const;
};

// Dense tabular action values over graph-admissible (zone, successor)
// pairs.
class QTable {
 public:
  QTable() = default;
  explicit QTable(const ZoneGraph& graph);

  double get(ZoneId s, ZoneId a) const;
  void set(ZoneId s, ZoneId a, double v);
  void zero();
  double max_over(ZoneId s, const std::vector<ZoneId>& actions) const;
  // Argmax with smallest-id tie break; nullopt when actions is empty.
  std::optional<ZoneId> argmax(ZoneId s, const std::vector<ZoneId>& actions) const;
  std::uint64_t content_hash() const;

 private:
  int index_of(ZoneId z) const;
  std::vector<ZoneId> zones_;
  std::vector<double> values_;  // M x M
};

// Single off-policy TD control step.
void q_update(QTable& q, ZoneId s, ZoneId a, ZoneId s_next,
              const std::vector<ZoneId>& next_actions, double reward_draw, double gamma,
              double eta);

struct SelfCheckState {
  long failure_counter = 0;  // consecutive non-improving checks
  long failure_count = 8;    // tolerated failures before restart
  Route best_route;
  QTable best_q;
  double best_profit = -std::numeric_limits<double>::infinity();
  long restarts = 0;
};

// One check round: preserve on improvement, count failures otherwise,
// restart once the counter has already reached the failure count.
// Returns true when the caller must blank its working policy.
bool self_check(SelfCheckState& state, const Route& candidate, const QTable& q,
                double candidate_profit);

struct CheckLogRow {
  long iteration = 0;
  long failure_counter = 0;
  long failure_count = 0;
  long restarts = 0;
  double candidate_profit = 0.0;
  double preserved_profit = 0.0;
};

struct RunResult {
  Route best_route;
  QTable best_q;
  double best_profit = 0.0;
  long restarts = 0;
  long teleports = 0;  // states without admissible successors
  std::vector<CheckLogRow> log;
  // Per-iteration Q content hashes, filled only when tracing is on.
  std::vector<std::uint64_t> q_trace;
};

struct RunOptions {
  bool self_check_enabled = true;
  // Overrides the anomaly-module failure count; <= 0 means "infinite".
  long failure_count = 8;
  Bucket train_bucket;
  bool trace_q = false;
};

// Greedy route from Q: argmax over admissible successors excluding the
// immediate reversal, smallest-id ties, extended until the accumulated
// expected time reaches the budget.
Route generate_path(const QTable& q, ZoneId start, double budget_minutes, const MdpModel& model,
                    const Bucket& start_bucket);

// The full learner: off-policy TD control with periodic self-check and
// blank-policy restarts driven by the failure count.
RunResult run_atdsc(const LearnerConfig& config, const MdpModel& model, const RunOptions& options);

// Plain TD baseline: the identical loop with the self-check machinery off;
// the returned route comes from the final Q.
RunResult run_td_plain(const LearnerConfig& config, const MdpModel& model, const Bucket& bucket,
                       bool trace_q = false);

// TD(0) state-value estimation under a fixed policy mapping each zone to
// its successor, used against the value-iteration oracle.
std::map<ZoneId, double> td0_state_value(const MdpModel& model, const Bucket& bucket,
                                         const std::map<ZoneId, ZoneId>& policy, long episodes,
                                         long steps_per_episode, double gamma, double eta,
                                         std::uint64_t seed);

struct BruteForceResult {
  std::vector<ZoneId> zones;
  std::vector<double> q_star;       // M x M, row-major over zones order
  std::vector<ZoneId> greedy_next;  // per zone
  std::vector<double> v_star;
};

// Exact value iteration to sup-norm tolerance; guarded to small instances.
BruteForceResult brute_force_q(const MdpModel& model, const Bucket& bucket, double gamma,
                               double tolerance = 1e-10);

}  // namespace atdsc

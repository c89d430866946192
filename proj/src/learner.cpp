#include "atdsc/learner.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

namespace atdsc {

void LearnerConfig::validate() const {
  if (gamma <= 0.0 || gamma >= 1.0) throw UsageError("gamma must be in (0,1)");
  if (eta <= 0.0) throw UsageError("eta must be positive");
  if (tau < 1) throw UsageError("tau must be >= 1");
  if (time_budget_minutes <= 0.0) throw UsageError("time budget must be positive");
  if (iterations < 0) throw UsageError("iteration count must be nonnegative");
  if (epsilon < 0.0 || epsilon > 1.0) throw UsageError("epsilon must be in [0,1]");
}

QTable::QTable(const ZoneGraph& graph) : zones_(graph.zones()) {
  values_.assign(zones_.size() * zones_.size(), 0.0);
}

int QTable::index_of(ZoneId z) const {
  auto it = std::lower_bound(zones_.begin(), zones_.end(), z);
  if (it == zones_.end() || *it != z) throw UsageError("unknown zone " + std::to_string(z));
  return static_cast<int>(it - zones_.begin());
}

double QTable::get(ZoneId s, ZoneId a) const {
  return values_[static_cast<std::size_t>(index_of(s)) * zones_.size() + index_of(a)];
}

void QTable::set(ZoneId s, ZoneId a, double v) {
  values_[static_cast<std::size_t>(index_of(s)) * zones_.size() + index_of(a)] = v;
}

void QTable::zero() { std::fill(values_.begin(), values_.end(), 0.0); }

double QTable::max_over(ZoneId s, const std::vector<ZoneId>& actions) const {
  double best = 0.0;
  bool any = false;
  for (ZoneId a : actions) {
    const double v = get(s, a);
    if (!any || v > best) {
      best = v;
      any = true;
    }
  }
  return any ? best : 0.0;
}

std::optional<ZoneId> QTable::argmax(ZoneId s, const std::vector<ZoneId>& actions) const {
  std::optional<ZoneId> best;
  double best_v = 0.0;
  for (ZoneId a : actions) {  // actions sorted ascending: first max wins ties
    const double v = get(s, a);
    if (!best || v > best_v) {
      best = a;
      best_v = v;
    }
  }
  return best;
}

std::uint64_t QTable::content_hash() const {
  // FNV-1a over the raw value bytes.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (double v : values_) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

void q_update(QTable& q, ZoneId s, ZoneId a, ZoneId s_next,
              const std::vector<ZoneId>& next_actions, double reward_draw, double gamma,
              double eta) {
  const double target = reward_draw + gamma * q.max_over(s_next, next_actions);
  q.set(s, a, q.get(s, a) + eta * (target - q.get(s, a)));
}

bool self_check(SelfCheckState& state, const Route& candidate, const QTable& q,
                double candidate_profit) {
  if (candidate_profit - state.best_profit > 0.0) {
    state.best_route = candidate;
    state.best_q = q;
    state.best_profit = candidate_profit;
    state.failure_counter = 0;
    return false;
  }
  if (state.failure_counter < state.failure_count) {
    ++state.failure_counter;
    return false;
  }
  state.failure_counter = 0;
  ++state.restarts;
  return true;
}

Route generate_path(const QTable& q, ZoneId start, double budget_minutes, const MdpModel& model,
                    const Bucket& start_bucket) {
  Route route;
  route.zones.push_back(start);
  const BucketConfig& bucketing = model.bucketing();
  ZoneId cur = start;
  ZoneId prev = 0;
  double elapsed = 0.0;
  while (elapsed < budget_minutes) {
    std::vector<ZoneId> candidates;
    for (ZoneId n : model.successors(cur))
      if (n != prev) candidates.push_back(n);
    const auto next = q.argmax(cur, candidates);
    if (!next) break;  // dead end: only the reversal remains
    const Bucket b = bucketing.advance_hours(start_bucket, static_cast<int>(elapsed / 60.0));
    elapsed += model.expected_delivery(cur, b) + model.expected_cruise(cur, *next, b);
    route.zones.push_back(*next);
    prev = cur;
    cur = *next;
  }
  return route;
}

namespace {

double step_size(const LearnerConfig& config, long iteration) {
  const long epoch = iteration / 10000;
  return config.eta / (1.0 + config.eta_decay * static_cast<double>(epoch));
}

double reward_for(const MdpModel& model, const LearnerConfig& config, ZoneId s, ZoneId a,
                  const Bucket& b) {
  return config.metric == RewardMetric::Income ? model.reward(s, a, b)
                                               : model.occupancy_reward(s, a, b);
}

RunResult run_loop(const LearnerConfig& config, const MdpModel& model, const RunOptions& options) {
  config.validate();
  const ZoneGraph& graph = model.graph();
  if (!graph.has_zone(config.start_zone))
    throw UsageError("start zone " + std::to_string(config.start_zone) + " is not in the graph");

  std::map<ZoneId, std::vector<ZoneId>> actions;
  for (ZoneId z : graph.zones()) {
    if (config.allow_unconnected_actions) {
      std::vector<ZoneId> all;
      for (ZoneId other : graph.zones())
        if (other != z) all.push_back(other);
      actions[z] = std::move(all);
    } else {
      actions[z] = model.successors(z);
    }
  }

  QTable q(graph);
  SelfCheckState state;
  state.failure_count =
      options.failure_count > 0 ? options.failure_count : std::numeric_limits<long>::max();
  state.best_q = q;

  RunResult result;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Bucket b = options.train_bucket;
  ZoneId s = config.start_zone;

  for (long it = 1; it <= config.iterations; ++it) {
    const auto& acts = actions.at(s);
    if (acts.empty()) {
      s = config.start_zone;  // degenerate graph: teleport back
      ++result.teleports;
      continue;
    }
    ZoneId a;
    if (config.epsilon > 0.0 && unit(rng) >= config.epsilon) {
      a = *q.argmax(s, acts);
    } else {
      a = acts[std::uniform_int_distribution<std::size_t>(0, acts.size() - 1)(rng)];
    }
    const double draw = unit(rng);
    const double reward_draw = draw < model.p_gr(s, a, b) ? reward_for(model, config, s, a, b) : 0.0;
    q_update(q, s, a, a, actions.at(a), reward_draw, config.gamma, step_size(config, it));
    s = a;
    if (options.trace_q) result.q_trace.push_back(q.content_hash());

    if (options.self_check_enabled && it % config.tau == 0) {
      const Route candidate = generate_path(q, config.start_zone, config.time_budget_minutes,
                                            model, b);
      const RouteEval ev = eval_route(candidate, config.time_budget_minutes, model, b);
      const double value = ev.metric(config.metric);
      const bool restart = self_check(state, candidate, q, value);
      result.log.push_back({it, state.failure_counter, state.failure_count, state.restarts, value,
                            std::max(state.best_profit, value)});
      if (restart) {
        q.zero();
        s = config.start_zone;
      }
    }
  }

  // Final candidate from the working policy; the preserved best is never
  // discarded.
  const Route final_route =
      generate_path(q, config.start_zone, config.time_budget_minutes, model, b);
  const RouteEval final_ev = eval_route(final_route, config.time_budget_minutes, model, b);
  const double final_value = final_ev.metric(config.metric);
  if (final_value > state.best_profit || state.best_route.zones.empty()) {
    state.best_route = final_route;
    state.best_q = q;
    state.best_profit = final_value;
  }

  result.best_route = state.best_route;
  result.best_q = state.best_q;
  result.best_profit = state.best_profit;
  result.restarts = state.restarts;
  return result;
}

}  // namespace

RunResult run_atdsc(const LearnerConfig& config, const MdpModel& model,
                    const RunOptions& options) {
  return run_loop(config, model, options);
}

RunResult run_td_plain(const LearnerConfig& config, const MdpModel& model, const Bucket& bucket,
                       bool trace_q) {
  RunOptions options;
  options.self_check_enabled = false;
  options.failure_count = 0;  // infinite; the mechanism is off anyway
  options.train_bucket = bucket;
  options.trace_q = trace_q;
  RunResult result = run_loop(config, model, options);
  return result;
}

std::map<ZoneId, double> td0_state_value(const MdpModel& model, const Bucket& bucket,
                                         const std::map<ZoneId, ZoneId>& policy, long episodes,
                                         long steps_per_episode, double gamma, double eta,
                                         std::uint64_t seed) {
  std::map<ZoneId, double> v;
  for (ZoneId z : model.graph().zones()) v[z] = 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& zones = model.graph().zones();
  for (long ep = 0; ep < episodes; ++ep) {
    ZoneId s = zones[std::uniform_int_distribution<std::size_t>(0, zones.size() - 1)(rng)];
    for (long step = 0; step < steps_per_episode; ++step) {
      auto it = policy.find(s);
      if (it == policy.end()) break;
      const ZoneId next = it->second;
      const double reward_draw =
          unit(rng) < model.p_gr(s, next, bucket) ? model.reward(s, next, bucket) : 0.0;
      v[s] += eta * (reward_draw + gamma * v[next] - v[s]);
      s = next;
    }
  }
  return v;
}

BruteForceResult brute_force_q(const MdpModel& model, const Bucket& bucket, double gamma,
                               double tolerance) {
  const auto& zones = model.graph().zones();
  const std::size_t m = zones.size();
  if (m > 12) throw UsageError("brute-force oracle is guarded to at most 12 zones");
  BruteForceResult out;
  out.zones = zones;
  out.q_star.assign(m * m, 0.0);
  out.v_star.assign(m, 0.0);
  out.greedy_next.assign(m, 0);

  std::vector<double> er(m * m, 0.0);
  std::vector<std::vector<std::size_t>> succ(m);
  std::map<ZoneId, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) index[zones[i]] = i;
  for (std::size_t i = 0; i < m; ++i)
    for (ZoneId a : model.successors(zones[i])) {
      const std::size_t j = index.at(a);
      succ[i].push_back(j);
      er[i * m + j] = model.p_gr(zones[i], a, bucket) * model.reward(zones[i], a, bucket);
    }

  // q(s,a) = E[r] + gamma * max_{a'} q(a, a'); the transition is
  // deterministic into the chosen successor, the reward stochastic.
  std::vector<double> q(m * m, 0.0), next_q(m * m, 0.0);
  double delta = tolerance + 1.0;
  while (delta > tolerance) {
    delta = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j : succ[i]) {
        double best = 0.0;
        bool any = false;
        for (std::size_t k : succ[j]) {
          if (!any || q[j * m + k] > best) {
            best = q[j * m + k];
            any = true;
          }
        }
        next_q[i * m + j] = er[i * m + j] + gamma * (any ? best : 0.0);
        delta = std::max(delta, std::abs(next_q[i * m + j] - q[i * m + j]));
      }
    std::swap(q, next_q);
  }
  out.q_star = q;
  for (std::size_t i = 0; i < m; ++i) {
    double best = 0.0;
    bool any = false;
    ZoneId arg = zones[i];
    for (std::size_t j : succ[i]) {
      if (!any || q[i * m + j] > best) {
        best = q[i * m + j];
        arg = zones[j];
        any = true;
      }
    }
    out.v_star[i] = any ? best : 0.0;
    out.greedy_next[i] = arg;
  }
  return out;
}

}  // namespace atdsc

#include "atdsc/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

namespace atdsc {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

void MdpConfig::validate() const {
  if (std::abs(alpha1 + alpha2 - 1.0) > 1e-12)
    throw UsageError("alpha1 + alpha2 must equal 1");
  if (beta <= 0.0 || beta > 1.0) throw UsageError("beta must be in (0,1]");
  if (omega_abnormal <= 0.0 || omega_abnormal > 1.0)
    throw UsageError("omega_abnormal must be in (0,1]");
  if (lambda <= 0.0 || lambda > 1.0) throw UsageError("lambda must be in (0,1]");
  if (abnormal_threshold <= 0.0 || abnormal_threshold > 1.0)
    throw UsageError("abnormal_threshold must be in (0,1]");
}

double global_income_cap(double inc, double mu_inc, double sigma_inc) {
  const double cap = mu_inc + 3.0 * sigma_inc;
  return inc > cap ? cap : inc;
}

double low_frequency_scale(double inc, long pickups, double avg_pickups, double lambda) {
  return static_cast<double>(pickups) < avg_pickups ? lambda * inc : inc;
}

std::map<ZoneId, double> clean_income(const std::map<ZoneId, double>& raw_inc,
                                      const std::map<ZoneId, long>& pickups, double lambda) {
  std::map<ZoneId, double> cleaned;
  if (raw_inc.empty()) return cleaned;
  double sum = 0.0, sumsq = 0.0;
  for (const auto& [z, inc] : raw_inc) {
    sum += inc;
    sumsq += inc * inc;
  }
  const double n = static_cast<double>(raw_inc.size());
  const double mu = sum / n;
  const double sigma = std::sqrt(std::max(0.0, sumsq / n - mu * mu));
  double avg_pickups = 0.0;
  for (const auto& [z, c] : pickups) avg_pickups += static_cast<double>(c);
  if (!pickups.empty()) avg_pickups /= static_cast<double>(pickups.size());
  for (const auto& [z, inc] : raw_inc) {
    double v = global_income_cap(inc, mu, sigma);
    auto it = pickups.find(z);
    const long count = it == pickups.end() ? 0 : it->second;
    cleaned[z] = low_frequency_scale(v, count, avg_pickups, lambda);
  }
  return cleaned;
}

OmegaMap flag_abnormal(const std::map<ZoneId, long>& current, const std::map<ZoneId, long>& prior,
                       double threshold, double omega_abnormal) {
  OmegaMap out;
  for (const auto& [z, prev] : prior) {
    auto it = current.find(z);
    const long cur = it == current.end() ? 0 : it->second;
    const bool abnormal = static_cast<double>(cur) < threshold * static_cast<double>(prev);
    out.omega[z] = abnormal ? omega_abnormal : 1.0;
    if (!abnormal) ++out.n_normal;
  }
  for (const auto& [z, cur] : current)
    if (!out.omega.count(z)) {
      out.omega[z] = 1.0;  // no prior data, nothing to compare against
      ++out.n_normal;
    }
  return out;
}

MdpModel::MdpModel(const AreaStatsTable& stats, const ZoneGraph& graph,
                   const TravelTimeModel& travel, const MdpConfig& config)
    : graph_(&graph), travel_(&travel), bucketing_(stats.bucketing), config_(config) {
  config_.validate();

  for (ZoneId z : graph.zones()) {
    const auto& ns = graph.neighbors(z);
    successors_[z] = std::vector<ZoneId>(ns.begin(), ns.end());
  }

  for (int month : bucketing_.months) {
    std::map<ZoneId, long> current, prior;
    for (ZoneId z : graph.zones()) {
      current[z] = stats.month_pickups(z, month);
      prior[z] = stats.month_prior(z, month);
    }
    omega_by_month_[month] =
        flag_abnormal(current, prior, config_.abnormal_threshold, config_.omega_abnormal);
  }

  std::mt19937_64 dropoff_rng(0);
  const int buckets = bucketing_.bucket_count();
  for (int bi = 0; bi < buckets; ++bi) {
    const Bucket b = bucketing_.bucket_at(bi);
    std::map<ZoneId, double> raw_inc;
    std::map<ZoneId, long> counts;
    for (ZoneId z : graph.zones()) {
      const ZoneBucketStats* cell = stats.cell(z, b);
      counts[z] = cell ? cell->pickup_count : 0;
      if (cell && cell->has_income()) raw_inc[z] = cell->raw_inc();
    }
    const auto cleaned = clean_income(raw_inc, counts, config_.lambda);
    for (const auto& [z, v] : cleaned) cleaned_inc_[{z, b}] = v;
    for (const auto& [z, c] : counts) pickup_counts_[{z, b}] = c;

    // p_pick: min-max normalized pickup counts over zones in the bucket.
    long min_c = counts.begin()->second, max_c = counts.begin()->second;
    for (const auto& [z, c] : counts) {
      min_c = std::min(min_c, c);
      max_c = std::max(max_c, c);
    }
    for (const auto& [z, c] : counts)
      p_pick_[{z, b}] = max_c == min_c
                            ? 1.0
                            : static_cast<double>(c - min_c) / static_cast<double>(max_c - min_c);

    // Expected delivery and cruise times under the empirical drop-off
    // distribution (or one sampled drop-off when configured).
    for (ZoneId z : graph.zones()) {
      const ZoneBucketStats* cell = stats.cell(z, b);
      std::map<ZoneId, double> dist;
      if (cell) dist = cell->dropoff_dist();
      if (config_.sample_dropoff && !dist.empty()) {
        std::mt19937_64 rng(mix_seed(mix_seed(0x0d0ffull, z), bi));
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        ZoneId picked = dist.begin()->first;
        for (const auto& [d, p] : dist) {
          picked = d;
          if (u <= p) break;
          u -= p;
        }
        dist = {{picked, 1.0}};
      }
      double t_del = 0.0;
      if (dist.empty()) {
        t_del = travel.mu_delivery();
      } else {
        for (const auto& [d, p] : dist) t_del += p * travel.delivery_time(z, d, b, graph);
      }
      expected_delivery_[{z, b}] = t_del;
      for (ZoneId next : successors_[z]) {
        double t_cru = 0.0;
        if (dist.empty()) {
          t_cru = travel.cruising_time(z, next, b, graph);
        } else {
          for (const auto& [d, p] : dist) t_cru += p * travel.cruising_time(d, next, b, graph);
        }
        expected_cruise_[{z, next, b}] = t_cru;
      }
    }

    // p_cru, normalized per state over its admissible successors.
    for (ZoneId z : graph.zones()) {
      const auto& succ = successors_[z];
      if (succ.empty()) continue;
      double min_t = expected_cruise_.at({z, succ.front(), b});
      double max_t = min_t;
      for (ZoneId next : succ) {
        const double t = expected_cruise_.at({z, next, b});
        min_t = std::min(min_t, t);
        max_t = std::max(max_t, t);
      }
      for (ZoneId next : succ) {
        const double t = expected_cruise_.at({z, next, b});
        p_cru_[{z, next, b}] =
            max_t == min_t ? 1.0 : 1.0 - config_.beta * (t - min_t) / (max_t - min_t);
      }
    }
  }
}

double MdpModel::cleaned_inc(ZoneId zone, const Bucket& b) const {
  auto it = cleaned_inc_.find({zone, b});
  return it == cleaned_inc_.end() ? 0.0 : it->second;
}

bool MdpModel::has_inc(ZoneId zone, const Bucket& b) const {
  return cleaned_inc_.count({zone, b}) != 0;
}

double MdpModel::expected_delivery(ZoneId pickup, const Bucket& b) const {
  auto it = expected_delivery_.find({pickup, b});
  return it == expected_delivery_.end() ? travel_->mu_delivery() : it->second;
}

double MdpModel::expected_cruise(ZoneId pickup, ZoneId next_pickup, const Bucket& b) const {
  auto it = expected_cruise_.find({pickup, next_pickup, b});
  if (it != expected_cruise_.end()) return it->second;
  return travel_->cruising_time(pickup, next_pickup, b, *graph_);
}

double MdpModel::p_pick(ZoneId zone, const Bucket& b) const {
  auto it = p_pick_.find({zone, b});
  return it == p_pick_.end() ? 0.0 : it->second;
}

double MdpModel::p_cru(ZoneId state, ZoneId next_pickup, const Bucket& b) const {
  auto it = p_cru_.find({state, next_pickup, b});
  if (it != p_cru_.end()) return it->second;
  return config_.beta;  // unconnected pair
}

double MdpModel::omega(ZoneId zone, int month) const {
  auto it = omega_by_month_.find(month);
  return it == omega_by_month_.end() ? 1.0 : it->second.at(zone);
}

int MdpModel::n_normal(int month) const {
  auto it = omega_by_month_.find(month);
  return it == omega_by_month_.end() ? static_cast<int>(graph_->zone_count()) : it->second.n_normal;
}

double MdpModel::p_gr(ZoneId state, ZoneId next_pickup, const Bucket& b) const {
  const double base = config_.alpha1 * p_cru(state, next_pickup, b) +
                      config_.alpha2 * p_pick(next_pickup, b);
  return clamp01(omega(next_pickup, b.month) * base);
}

double MdpModel::reward(ZoneId pickup, ZoneId next_pickup, const Bucket& b) const {
  if (!has_inc(pickup, b)) return 0.0;
  const double t_del = expected_delivery(pickup, b);
  const double t_cru = expected_cruise(pickup, next_pickup, b);
  if (t_del + t_cru <= 0.0) return 0.0;
  return cleaned_inc(pickup, b) * t_del / (t_del + t_cru);
}

double MdpModel::occupancy_reward(ZoneId pickup, ZoneId next_pickup, const Bucket& b) const {
  const double t_del = expected_delivery(pickup, b);
  const double t_cru = expected_cruise(pickup, next_pickup, b);
  if (t_del + t_cru <= 0.0) return 0.0;
  return t_del / (t_del + t_cru);
}

MdpModel::OutcomeDist MdpModel::action_reward_probability(ZoneId state, ZoneId next_pickup,
                                                          const Bucket& b) const {
  OutcomeDist dist;
  dist.p_reward = p_gr(state, next_pickup, b);
  dist.p_zero = 1.0 - dist.p_reward;
  dist.reward_value = reward(state, next_pickup, b);
  return dist;
}

const std::vector<ZoneId>& MdpModel::successors(ZoneId state) const {
  auto it = successors_.find(state);
  if (it == successors_.end()) throw UsageError("unknown zone " + std::to_string(state));
  return it->second;
}

void MdpModel::dump_reward_csv(std::ostream& out) const {
  out << "zone,next_zone,bucket,value\n";
  for (const auto& [key, z] : successors_) {
    for (int bi = 0; bi < bucketing_.bucket_count(); ++bi) {
      const Bucket b = bucketing_.bucket_at(bi);
      for (ZoneId next : z)
        out << key << "," << next << "," << bucket_key(b) << "," << reward(key, next, b) << "\n";
    }
  }
}

void MdpModel::dump_pgr_csv(std::ostream& out) const {
  out << "zone,next_zone,bucket,value\n";
  for (const auto& [key, z] : successors_) {
    for (int bi = 0; bi < bucketing_.bucket_count(); ++bi) {
      const Bucket b = bucketing_.bucket_at(bi);
      for (ZoneId next : z)
        out << key << "," << next << "," << bucket_key(b) << "," << p_gr(key, next, b) << "\n";
    }
  }
}

}  // namespace atdsc

#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "atdsc/graph.hpp"
#include "atdsc/ingest.hpp"
#include "atdsc/travel.hpp"
#include "atdsc/types.hpp"

namespace atdsc {

struct MdpConfig {
  double alpha1 = 0.5;          // cruise-probability weight
  double alpha2 = 0.5;          // pickup-probability weight
  double beta = 0.1;            // reward probability for unconnected pairs
  double omega_abnormal = 0.1;  // anomaly scale applied to abnormal zones
  double lambda = 0.5;          // low-frequency income scale
  double abnormal_threshold = 0.8;
  // When true, the drop-off used in the reward is sampled rather than
  // integrated over the empirical distribution.
  bool sample_dropoff = false;

  void validate() const;
};

// Pure income-cleaning steps. The global cap uses cross-zone mean and
// standard deviation of the raw minute incomes in one bucket.
double global_income_cap(double inc, double mu_inc, double sigma_inc);
double low_frequency_scale(double inc, long pickups, double avg_pickups, double lambda);

// Zone anomaly decision: abnormal iff current < threshold * prior.
struct OmegaMap {
  std::map<ZoneId, double> omega;  // 1.0 normal, omega_abnormal otherwise
  int n_normal = 0;

  double at(ZoneId z) const {
    auto it = omega.find(z);
    return it == omega.end() ? 1.0 : it->second;
  }
};

OmegaMap flag_abnormal(const std::map<ZoneId, long>& current, const std::map<ZoneId, long>& prior,
                       double threshold, double omega_abnormal);

// Reward and action-reward probability tables, immutable once built.
class MdpModel {
 public:
  MdpModel(const AreaStatsTable& stats, const ZoneGraph& graph, const TravelTimeModel& travel,
           const MdpConfig& config);

  const ZoneGraph& graph() const { return *graph_; }
  const TravelTimeModel& travel() const { return *travel_; }
  const BucketConfig& bucketing() const { return bucketing_; }
  const MdpConfig& config() const { return config_; }

  // Cleaned minute income; zero (flagged) when the zone has no income
  // observation in the bucket.
  double cleaned_inc(ZoneId zone, const Bucket& b) const;
  bool has_inc(ZoneId zone, const Bucket& b) const;
  // Expected delivery minutes at a pickup zone, drop-off integrated over
  // the empirical distribution.
  double expected_delivery(ZoneId pickup, const Bucket& b) const;
  // Expected cruising minutes from a pickup's drop-offs to the queried
  // next pickup.
  double expected_cruise(ZoneId pickup, ZoneId next_pickup, const Bucket& b) const;

  double p_pick(ZoneId zone, const Bucket& b) const;
  // Normalized over the admissible successors of `state` in the bucket.
  double p_cru(ZoneId state, ZoneId next_pickup, const Bucket& b) const;
  double p_gr(ZoneId state, ZoneId next_pickup, const Bucket& b) const;

  double omega(ZoneId zone, int month) const;
  int n_normal(int month) const;

  // Earning rate collected at `pickup` when the learner queries
  // `next_pickup` as the successor.
  double reward(ZoneId pickup, ZoneId next_pickup, const Bucket& b) const;
  // Occupancy-rate variant of the reward.
  double occupancy_reward(ZoneId pickup, ZoneId next_pickup, const Bucket& b) const;

  // Outcome distribution of taking the action into `next_pickup`:
  // reward with probability p_gr, zero otherwise.
  struct OutcomeDist {
    double reward_value = 0.0;
    double p_reward = 0.0;
    double p_zero = 1.0;
  };
  OutcomeDist action_reward_probability(ZoneId state, ZoneId next_pickup, const Bucket& b) const;

  // Graph-admissible successors of a state (its neighbors).
  const std::vector<ZoneId>& successors(ZoneId state) const;

  void dump_reward_csv(std::ostream& out) const;
  void dump_pgr_csv(std::ostream& out) const;

 private:
  const ZoneGraph* graph_;
  const TravelTimeModel* travel_;
  BucketConfig bucketing_;
  MdpConfig config_;
  std::map<std::pair<ZoneId, Bucket>, double> cleaned_inc_;
  std::map<std::pair<ZoneId, Bucket>, long> pickup_counts_;
  std::map<std::pair<ZoneId, Bucket>, double> expected_delivery_;
  std::map<std::tuple<ZoneId, ZoneId, Bucket>, double> expected_cruise_;
  std::map<std::pair<ZoneId, Bucket>, double> p_pick_;
  std::map<std::tuple<ZoneId, ZoneId, Bucket>, double> p_cru_;
  std::map<int, OmegaMap> omega_by_month_;
  std::map<ZoneId, std::vector<ZoneId>> successors_;
};

// Applies the cleaning pipeline (global 3-sigma cap, then the lambda
// scale for below-average pickup counts) to one bucket's raw incomes.
// Recomputing from raw values makes repeated application a no-op.
std::map<ZoneId, double> clean_income(const std::map<ZoneId, double>& raw_inc,
                                      const std::map<ZoneId, long>& pickups, double lambda);

}  // namespace atdsc

#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

#include "aptcp/phy_timing.hpp"
#include "aptcp/saturation.hpp"
#include "aptcp/scenario.hpp"

namespace aptcp {

/// How the mean collision length and collision probability enter a cycle.
///  - PaperSimple: every collision lasts T_colliTCP-ACK and occurs with the
///    probability beta(1 - (1 - beta)^n).
///  - Mixture: collision probability is the complement of idle and success; the
///    length is the expected longest initial frame (RTS for data, the TCP-ACK
///    frame itself for ACKs) over the AP/STA collider mix.
enum class CollisionPolicy { PaperSimple, Mixture };

std::string_view to_string(CollisionPolicy policy);

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMaxTailMass = 1e-12;

struct StationaryDistribution {
  std::vector<double> pi;  // pi[n] for n = 0..n_max
  double tail_mass = 0.0;  // sum of pi_n for n > n_max
};

/// pi_n = (n + 1) / (n! 2e): the number of nonempty stations at success epochs.
StationaryDistribution stationary_distribution(int n_max);

struct SlotEventProbs {
  double p_idle = 0.0;
  double p_s_ap = 0.0;
  double p_s_sta = 0.0;
  double p_c = 0.0;
};

/// Slot outcome probabilities with n backlogged stations and a backlogged AP,
/// each attempting with probability beta. The four values partition the slot.
SlotEventProbs state_event_probs(int n, double beta);

/// Collision probability beta(1 - (1 - beta)^n) used by CollisionPolicy::PaperSimple.
double simple_collision_prob(int n, double beta);

/// Mean duration of a collision in state n (n >= 1).
double collision_duration(int n, double beta, const Scenario& scenario,
                          const ExchangeDurations& durations, CollisionPolicy policy);

struct StateMetrics {
  int n = 0;
  double pi_n = 0.0;
  double beta = 0.0;
  double p_idle = 0.0;
  double p_s_ap = 0.0;
  double p_s_sta = 0.0;
  double p_c = 0.0;  // complement form
  double t_s_ap_s = 0.0;
  double t_s_sta_s = 0.0;
  double t_c_s = 0.0;
  double e_n_x_s = 0.0;  // mean sojourn in state n
};

StateMetrics state_metrics(int n, double beta, const Scenario& scenario,
                           const ExchangeDurations& durations, double slot_time_s,
                           CollisionPolicy policy);

/// Mean time from one successful transmission to the next in state n.
double mean_cycle_length(int n, const Scenario& scenario, const ExchangeDurations& durations,
                         double slot_time_s, double beta, CollisionPolicy policy);

struct ModelOptions {
  int n_max = 40;
  CollisionPolicy policy = CollisionPolicy::Mixture;
  AckTiming fidelity = AckTiming::PaperFidelity;
};

struct ThroughputReport {
  double phi_aggregate_bps = 0.0;
  double phi_download_bps = 0.0;
  double phi_upload_bps = 0.0;
  double ap_success_rate_per_s = 0.0;
  int truncation_n_max = 0;
  double truncation_tail_mass = 0.0;
  std::vector<StateMetrics> states;
};

/// Renewal-reward AP throughput. Throws TruncationError when the stationary
/// mass beyond n_max is not below kMaxTailMass.
ThroughputReport throughput(const Scenario& scenario, const PhyProfile& profile,
                            const ModelOptions& options = {});

/// Per-connection share, in scenario order: each direction's total split in
/// proportion to window.
std::vector<double> per_sta_rates(const ThroughputReport& report, const Scenario& scenario);

}  // namespace aptcp

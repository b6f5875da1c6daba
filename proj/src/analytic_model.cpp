#include "aptcp/analytic_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace aptcp {

std::string_view to_string(CollisionPolicy policy) {
  return policy == CollisionPolicy::PaperSimple ? "paper" : "mixture";
}

StationaryDistribution stationary_distribution(int n_max) {
  if (n_max < 1) throw std::invalid_argument("stationary_distribution: n_max must be >= 1");
  const double two_e = 2.0 * std::numbers::e;
  StationaryDistribution dist;
  dist.pi.reserve(static_cast<std::size_t>(n_max) + 1);
  double inv_factorial = 1.0;  // 1/n!
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) inv_factorial /= n;
    dist.pi.push_back((n + 1) * inv_factorial / two_e);
  }
  // Summed directly: 1 - sum(pi) cancels below 1e-16.
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    inv_factorial /= n;
    const double term = (n + 1) * inv_factorial / two_e;
    tail += term;
    if (term == 0.0 || term < tail * 1e-18) break;
  }
  dist.tail_mass = tail;
  return dist;
}

SlotEventProbs state_event_probs(int n, double beta) {
  if (n < 0) throw std::invalid_argument("state_event_probs: n must be >= 0");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("state_event_probs: beta in (0,1)");
  SlotEventProbs e;
  const double quiet_n = std::pow(1.0 - beta, n);
  e.p_idle = quiet_n * (1.0 - beta);
  e.p_s_ap = beta * quiet_n;
  e.p_s_sta = n * beta * quiet_n;
  // A lone AP cannot collide; keep the rounding residue out of p_c.
  e.p_c = n == 0 ? 0.0 : 1.0 - e.p_idle - e.p_s_ap - e.p_s_sta;
  return e;
}

double simple_collision_prob(int n, double beta) {
  return beta * (1.0 - std::pow(1.0 - beta, n));
}

double collision_duration(int n, double beta, const Scenario& scenario,
                          const ExchangeDurations& d, CollisionPolicy policy) {
  if (n < 1) throw std::invalid_argument("collision_duration: a collision needs n >= 1");
  if (policy == CollisionPolicy::PaperSimple) return d.t_colli_tcpack_s;

  // A data frame opens with an RTS; a TCP-ACK is sent bare. The AP sends data
  // w.p. p_d, a station sends data w.p. p_u (uploaders hold data, downloaders ACKs).
  const double pd = scenario.p_download();
  const double pu = scenario.p_upload();
  const bool ack_longer = d.t_colli_tcpack_s >= d.t_colli_rts_s;
  const double longer = ack_longer ? d.t_colli_tcpack_s : d.t_colli_rts_s;
  const double shorter = ack_longer ? d.t_colli_rts_s : d.t_colli_tcpack_s;
  // Probability that a given participant sends the shorter frame type.
  const double ap_short = ack_longer ? pd : pu;
  const double sta_short = ack_longer ? pu : pd;

  double p_coll = 0.0;
  double p_all_short = 0.0;
  for (int ap = 0; ap <= 1; ++ap) {
    const double p_ap = ap ? beta : 1.0 - beta;
    for (int j = 0; j <= n; ++j) {
      if (ap + j < 2) continue;
      const double p_j = std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                                  std::lgamma(n - j + 1.0)) *
                         std::pow(beta, j) * std::pow(1.0 - beta, n - j);
      const double p = p_ap * p_j;
      p_coll += p;
      p_all_short += p * (ap ? ap_short : 1.0) * std::pow(sta_short, j);
    }
  }
  const double frac_short = p_all_short / p_coll;
  return frac_short * shorter + (1.0 - frac_short) * longer;
}

StateMetrics state_metrics(int n, double beta, const Scenario& scenario,
                           const ExchangeDurations& d, double slot_time_s,
                           CollisionPolicy policy) {
  const auto ev = state_event_probs(n, beta);
  const double pd = scenario.p_download();
  const double pu = scenario.p_upload();

  StateMetrics m;
  m.n = n;
  m.beta = beta;
  m.p_idle = ev.p_idle;
  m.p_s_ap = ev.p_s_ap;
  m.p_s_sta = ev.p_s_sta;
  m.p_c = ev.p_c;
  m.t_s_ap_s = pd * d.t_data_s + pu * d.t_ack_s;
  m.t_s_sta_s = pu * d.t_data_s + pd * d.t_ack_s;
  m.t_c_s = n >= 1 ? collision_duration(n, beta, scenario, d, policy) : 0.0;

  const double p_c =
      policy == CollisionPolicy::PaperSimple ? simple_collision_prob(n, beta) : ev.p_c;
  // E = P_idle (delta + E) + P_c (T_c + E) + P_sAP T_sAP + P_sSTA T_sSTA
  m.e_n_x_s = (ev.p_idle * slot_time_s + ev.p_s_ap * m.t_s_ap_s + p_c * m.t_c_s +
               ev.p_s_sta * m.t_s_sta_s) /
              (ev.p_s_ap + ev.p_s_sta);
  return m;
}

double mean_cycle_length(int n, const Scenario& scenario, const ExchangeDurations& durations,
                         double slot_time_s, double beta, CollisionPolicy policy) {
  return state_metrics(n, beta, scenario, durations, slot_time_s, policy).e_n_x_s;
}

ThroughputReport throughput(const Scenario& scenario, const PhyProfile& profile,
                            const ModelOptions& options) {
  profile.validate();
  const auto dist = stationary_distribution(options.n_max);
  if (!(dist.tail_mass < kMaxTailMass)) {
    throw TruncationError("stationary tail mass " + std::to_string(dist.tail_mass) +
                          " beyond n_max=" + std::to_string(options.n_max) +
                          " is not below 1e-12");
  }
  const auto betas = build_table(options.n_max + 1, profile);
  const auto durations = exchange_durations(profile, options.fidelity);

  ThroughputReport report;
  report.truncation_n_max = options.n_max;
  report.truncation_tail_mass = dist.tail_mass;
  report.states.reserve(dist.pi.size());

  double reward = 0.0;
  double cycle = 0.0;
  for (int n = 0; n <= options.n_max; ++n) {
    auto m = state_metrics(n, betas.beta(n + 1), scenario, durations, profile.slot_time_s,
                           options.policy);
    m.pi_n = dist.pi[static_cast<std::size_t>(n)];
    // The AP wins the success that ends the cycle w.p. 1/(n+1).
    reward += m.pi_n / (n + 1);
    cycle += m.pi_n * m.e_n_x_s;
    report.states.push_back(m);
  }

  report.ap_success_rate_per_s = reward / cycle;
  // One AP success moves one segment: a download segment, or the ACK that
  // releases the next upload segment.
  report.phi_aggregate_bps =
      report.ap_success_rate_per_s * 8.0 * static_cast<double>(profile.tcp_data_payload_bytes);
  report.phi_download_bps = scenario.p_download() * report.phi_aggregate_bps;
  report.phi_upload_bps = scenario.p_upload() * report.phi_aggregate_bps;
  return report;
}

std::vector<double> per_sta_rates(const ThroughputReport& report, const Scenario& scenario) {
  std::vector<double> rates;
  rates.reserve(scenario.size());
  for (const auto& c : scenario.connections()) {
    const double w = c.max_window_pkts;
    if (c.direction == Direction::Download) {
      rates.push_back(report.phi_download_bps * w / static_cast<double>(scenario.download_window()));
    } else {
      rates.push_back(report.phi_upload_bps * w / static_cast<double>(scenario.upload_window()));
    }
  }
  return rates;
}

}  // namespace aptcp

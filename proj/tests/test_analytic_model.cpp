#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "aptcp/analytic_model.hpp"
#include "aptcp/presets.hpp"

using namespace aptcp;

namespace {

Scenario table1_row1() {
  const std::vector<int> down{24, 20, 20, 16, 16, 16};
  const std::vector<int> up{24, 24, 24, 24, 20, 20, 16, 16, 16};
  return Scenario::from_windows(down, up);
}

// Monte-Carlo of the semi-Markov process: draw every slot's attempts and frame
// types explicitly, move n up on AP successes and down on station successes.
double monte_carlo_bps(const Scenario& s, const PhyProfile& p, AckTiming fidelity,
                       std::uint64_t success_epochs, std::uint64_t seed) {
  const auto d = exchange_durations(p, fidelity);
  const auto betas = build_table(60, p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double pd = s.p_download();
  const double pu = s.p_upload();
  const double rts = d.t_colli_rts_s;
  const double ack = d.t_colli_tcpack_s;

  int n = 1;
  double time = 0.0;
  std::uint64_t ap_wins = 0;
  for (std::uint64_t e = 0; e < success_epochs;) {
    const double beta = betas.beta(n + 1);
    const bool ap = u(rng) < beta;
    int sta = 0;
    for (int i = 0; i < n; ++i) sta += u(rng) < beta;
    if (!ap && sta == 0) {
      time += p.slot_time_s;
    } else if (ap && sta == 0) {
      time += u(rng) < pd ? d.t_data_s : d.t_ack_s;
      ++ap_wins;
      ++e;
      ++n;
    } else if (!ap && sta == 1) {
      time += u(rng) < pu ? d.t_data_s : d.t_ack_s;
      ++e;
      --n;
    } else {
      double longest = 0.0;
      if (ap) longest = std::max(longest, u(rng) < pd ? rts : ack);
      for (int i = 0; i < sta; ++i) longest = std::max(longest, u(rng) < pu ? rts : ack);
      time += longest;
    }
  }
  return static_cast<double>(ap_wins) / time * 8.0 * static_cast<double>(p.tcp_data_payload_bytes);
}

}  // namespace

TEST_CASE("stationary distribution") {
  const auto d = stationary_distribution(40);
  CHECK(d.pi.size() == 41);
  CHECK(d.pi[0] == doctest::Approx(1 / (2 * std::numbers::e)).epsilon(1e-15));
  CHECK(d.pi[1] == doctest::Approx(1 / std::numbers::e).epsilon(1e-15));
  double sum = 0.0;
  for (double v : d.pi) sum += v;
  CHECK(sum + d.tail_mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.tail_mass < kMaxTailMass);
  CHECK(stationary_distribution(30).tail_mass < 1e-30);
  CHECK(stationary_distribution(10).tail_mass > kMaxTailMass);
  for (std::size_t n = 0; n + 1 < d.pi.size(); ++n) {
    CAPTURE(n);
    const double lhs = d.pi[n] / static_cast<double>(n + 1);
    const double rhs = d.pi[n + 1] * static_cast<double>(n + 1) / static_cast<double>(n + 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
  }
  CHECK_THROWS_AS(stationary_distribution(0), std::invalid_argument);
}

TEST_CASE("slot event probabilities") {
  const auto e1 = state_event_probs(1, 0.1);
  CHECK(e1.p_idle == doctest::Approx(0.81).epsilon(1e-14));
  CHECK(e1.p_s_ap == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(e1.p_s_sta == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(e1.p_c == doctest::Approx(0.01).epsilon(1e-12));

  const auto e0 = state_event_probs(0, 0.2);
  CHECK(e0.p_s_sta == 0.0);
  CHECK(e0.p_c == 0.0);
  CHECK(e0.p_idle == doctest::Approx(0.8));
  CHECK(e0.p_s_ap == doctest::Approx(0.2));

  for (int n = 0; n <= 60; n += 3) {
    for (double beta : {1e-4, 0.013, 0.06, 0.3, 0.9}) {
      const auto e = state_event_probs(n, beta);
      CHECK(std::abs(e.p_idle + e.p_s_ap + e.p_s_sta + e.p_c - 1.0) < 1e-12);
      CHECK(e.p_c >= -1e-15);
    }
  }
  CHECK(simple_collision_prob(1, 0.1) == doctest::Approx(0.01));
  CHECK_THROWS(state_event_probs(-1, 0.1));
  CHECK_THROWS(state_event_probs(2, 0.0));
}

TEST_CASE("collision duration") {
  const auto s = table1_row1();
  const auto b2 = exchange_durations(builtin_profile(Standard::B2), AckTiming::PaperFidelity);
  const auto b11 = exchange_durations(builtin_profile(Standard::B11), AckTiming::PaperFidelity);

  const std::vector<int> none;
  const std::vector<int> ups{10, 10};
  const auto uploads_only = Scenario::from_windows(none, ups);
  const std::vector<int> downs{10, 10};
  const auto downloads_only = Scenario::from_windows(downs, none);

  // Stations only attempt RTSs, so any collision between stations lasts T_colliRTS.
  const double t = collision_duration(2, 0.05, uploads_only, b11, CollisionPolicy::Mixture);
  CHECK(t == doctest::Approx(b11.t_colli_rts_s).epsilon(1e-14));
  // Downloads at 11 Mbps: every participant sends a TCP-ACK except the AP.
  const double beta = 0.05;
  const int n = 4;
  const double p_ap_in = beta * (1 - std::pow(1 - beta, n));
  const double p_coll = 1 - std::pow(1 - beta, n + 1) - (n + 1) * beta * std::pow(1 - beta, n);
  const double expect =
      (p_ap_in * b11.t_colli_rts_s + (p_coll - p_ap_in) * b11.t_colli_tcpack_s) / p_coll;
  CHECK(collision_duration(n, beta, downloads_only, b11, CollisionPolicy::Mixture) ==
        doctest::Approx(expect).epsilon(1e-12));
  // At 2 Mbps the TCP-ACK frame is the longer one and any downloader sends it.
  CHECK(collision_duration(3, 0.05, downloads_only, b2, CollisionPolicy::Mixture) ==
        doctest::Approx(b2.t_colli_tcpack_s).epsilon(1e-14));
  CHECK(collision_duration(3, 0.05, downloads_only, b2, CollisionPolicy::PaperSimple) ==
        b2.t_colli_tcpack_s);

  // Mixture lies between the two pure collision lengths.
  for (int n = 1; n < 20; ++n) {
    const double m = collision_duration(n, 0.04, s, b11, CollisionPolicy::Mixture);
    CHECK(m >= b11.t_colli_tcpack_s);
    CHECK(m <= b11.t_colli_rts_s);
  }
  CHECK_THROWS(collision_duration(0, 0.05, s, b11, CollisionPolicy::Mixture));
}

TEST_CASE("mean cycle length") {
  const auto s = table1_row1();
  const auto p = builtin_profile(Standard::B11);
  const auto d = exchange_durations(p, AckTiming::PaperFidelity);
  const double beta = 2.0 / 33;
  const auto m0 = state_metrics(0, beta, s, d, p.slot_time_s, CollisionPolicy::Mixture);
  CHECK(m0.e_n_x_s ==
        doctest::Approx(((1 - beta) * p.slot_time_s + beta * m0.t_s_ap_s) / beta).epsilon(1e-14));
  CHECK(m0.t_s_ap_s == doctest::Approx(s.p_download() * d.t_data_s + s.p_upload() * d.t_ack_s));

  for (int n = 1; n < 10; ++n) {
    CHECK(mean_cycle_length(n, s, d, p.slot_time_s, 0.05, CollisionPolicy::Mixture) > 0);
    CHECK(mean_cycle_length(n, s, d, p.slot_time_s, 0.05, CollisionPolicy::PaperSimple) > 0);
  }

  // Single-direction collapse.
  const std::vector<int> none;
  const std::vector<int> w{24, 16};
  const auto down = Scenario::from_windows(w, none);
  const auto md = state_metrics(3, 0.05, down, d, p.slot_time_s, CollisionPolicy::Mixture);
  CHECK(md.t_s_ap_s == d.t_data_s);
  CHECK(md.t_s_sta_s == d.t_ack_s);
  const auto up = Scenario::from_windows(none, w);
  const auto mu = state_metrics(3, 0.05, up, d, p.slot_time_s, CollisionPolicy::Mixture);
  CHECK(mu.t_s_ap_s == d.t_ack_s);
  CHECK(mu.t_s_sta_s == d.t_data_s);
}

TEST_CASE("throughput report identities") {
  const auto s = table1_row1();
  for (auto std_ : {Standard::B11, Standard::B2, Standard::G54, Standard::G12}) {
    for (auto policy : {CollisionPolicy::PaperSimple, CollisionPolicy::Mixture}) {
      const auto r = throughput(s, builtin_profile(std_), {40, policy, AckTiming::PaperFidelity});
      CHECK(r.phi_download_bps + r.phi_upload_bps ==
            doctest::Approx(r.phi_aggregate_bps).epsilon(1e-12));
      CHECK(r.phi_download_bps / r.phi_upload_bps ==
            doctest::Approx(static_cast<double>(s.download_window()) /
                            static_cast<double>(s.upload_window()))
                .epsilon(1e-12));
      CHECK(r.states.size() == 41);
      CHECK(r.truncation_tail_mass < kMaxTailMass);
      for (const auto& m : r.states) CHECK(m.e_n_x_s > 0);
    }
  }
  CHECK_THROWS_AS(throughput(s, builtin_profile(Standard::B11), {10}), TruncationError);
}

TEST_CASE("window scaling leaves every throughput unchanged") {
  const auto s = table1_row1();
  const auto p = builtin_profile(Standard::G48);
  const auto base = throughput(s, p);
  for (int k : {2, 3, 7}) {
    const auto r = throughput(s.scaled(k), p);
    CHECK(r.phi_aggregate_bps == base.phi_aggregate_bps);
    CHECK(r.phi_download_bps == base.phi_download_bps);
    CHECK(r.phi_upload_bps == base.phi_upload_bps);
  }
}

TEST_CASE("simple collision policy makes the aggregate independent of the mix") {
  const auto p = builtin_profile(Standard::B11);
  const ModelOptions opt{40, CollisionPolicy::PaperSimple, AckTiming::PaperFidelity};
  const std::vector<int> a{24, 24, 16}, b{20, 16}, none;
  const double x = throughput(Scenario::from_windows(a, b), p, opt).phi_aggregate_bps;
  const double y = throughput(Scenario::from_windows(b, a), p, opt).phi_aggregate_bps;
  const double z = throughput(Scenario::from_windows(a, none), p, opt).phi_aggregate_bps;
  CHECK(x == doctest::Approx(y).epsilon(1e-12));
  CHECK(x == doctest::Approx(z).epsilon(1e-12));
}

TEST_CASE("renewal-reward value agrees with a Monte-Carlo of the same chain") {
  const auto s = table1_row1();
  for (auto std_ : {Standard::B11, Standard::G54}) {
    CAPTURE(profile_name(std_));
    const auto p = builtin_profile(std_);
    const double analytic =
        throughput(s, p, {40, CollisionPolicy::Mixture, AckTiming::PaperFidelity})
            .phi_aggregate_bps;
    const double mc = monte_carlo_bps(s, p, AckTiming::PaperFidelity, 2'000'000, 7);
    CHECK(mc == doctest::Approx(analytic).epsilon(0.005));
  }
}

TEST_CASE("per-station shares") {
  const std::vector<int> down{24, 16}, up{20};
  const auto s = Scenario::from_windows(down, up);
  const auto r = throughput(s, builtin_profile(Standard::B11));
  const auto rates = per_sta_rates(r, s);
  REQUIRE(rates.size() == 3);
  CHECK(rates[0] / r.phi_download_bps == doctest::Approx(0.6));
  CHECK(rates[1] / r.phi_download_bps == doctest::Approx(0.4));
  CHECK(rates[2] == doctest::Approx(r.phi_upload_bps));

  const std::vector<int> equal{16, 16, 16}, none;
  const auto e = Scenario::from_windows(equal, none);
  const auto re = throughput(e, builtin_profile(Standard::B11));
  for (double v : per_sta_rates(re, e)) CHECK(v == doctest::Approx(re.phi_download_bps / 3));
}

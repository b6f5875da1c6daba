#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "aptcp/estimate.hpp"

using namespace aptcp;

TEST_CASE("Student-t interval") {
  const std::vector<double> same(5, 3.25);
  const auto i = confidence_interval(same);
  CHECK(i.mean == 3.25);
  CHECK(i.half_width == 0.0);

  // mean 2, sample sd 1, t(0.975, 3) = 3.182446305284263.
  const std::vector<double> xs{1.0, 2.0, 2.0, 3.0};
  const auto c = confidence_interval(xs);
  const double sd = std::sqrt(2.0 / 3.0);
  CHECK(c.mean == doctest::Approx(2.0));
  CHECK(c.half_width == doctest::Approx(3.182446305284263 * sd / 2.0).epsilon(1e-12));
  CHECK(c.lower() < c.mean);
  CHECK(c.overlaps(Interval{2.5, 0.2}));
  CHECK_FALSE(c.overlaps(Interval{10.0, 0.1}));

  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(confidence_interval(one), InsufficientReplications);
  CHECK_THROWS_AS(confidence_interval(xs, 1.5), std::invalid_argument);
}

TEST_CASE("half-width shrinks with the square root of the sample count") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(10.0, 2.0);
  std::vector<double> xs(6400);
  for (auto& x : xs) x = g(rng);
  const auto small = confidence_interval(std::span<const double>(xs).first(400));
  const auto large = confidence_interval(std::span<const double>(xs));
  CHECK(small.half_width / large.half_width == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("estimate over replications") {
  std::vector<SimStats> reps(3);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    auto& s = reps[i];
    s.horizon_s = 3.0;
    s.warmup_s = 1.0;
    s.payload_bytes = 1000;
    s.download_segments = 100;
    s.upload_segments = 50 + i;
    s.segments_per_connection = {100, 50 + i};
    s.ap_successes = 10;
    s.ap_successes_to_empty_sta = 9;
  }
  const auto r = estimate(reps);
  CHECK(r.replications == 3);
  CHECK(r.download_bps.mean == doctest::Approx(400000.0));
  CHECK(r.download_bps.half_width == 0.0);
  CHECK(r.upload_bps.mean == doctest::Approx(204000.0));
  CHECK(r.upload_bps.half_width > 0.0);
  CHECK(r.aggregate_bps.mean == doctest::Approx(604000.0));
  REQUIRE(r.per_connection_bps.size() == 2);
  CHECK(r.empty_target_fraction == doctest::Approx(0.9));
  CHECK_THROWS_AS(estimate(std::span<const SimStats>(reps).first(1)), InsufficientReplications);
}

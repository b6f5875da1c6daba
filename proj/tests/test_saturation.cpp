#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "aptcp/saturation.hpp"

using namespace aptcp;

namespace {

// Closed-form attempt rate with W = cw_min + 1; singular at p = 1/2.
double closed_form(double p, int cw_min, int m) {
  const double w = cw_min + 1;
  return 2 * (1 - 2 * p) / ((1 - 2 * p) * (w + 1) + p * w * (1 - std::pow(2 * p, m)));
}

// Damped iteration of the two-equation map, used as an independent oracle.
double iterate_map(int k, int cw_min, int m) {
  double beta = 0.05;
  for (int i = 0; i < 20000; ++i) {
    const double p = 1 - std::pow(1 - beta, k - 1);
    beta = 0.5 * beta + 0.5 * closed_form(p, cw_min, m);
  }
  return beta;
}

}  // namespace

TEST_CASE("backoff stages") {
  CHECK(backoff_stages(31, 1023) == 5);
  CHECK(backoff_stages(15, 1023) == 6);
  CHECK_THROWS(backoff_stages(30, 1023));
  CHECK_THROWS(backoff_stages(1023, 31));
}

TEST_CASE("series attempt rate matches the closed form away from p = 1/2") {
  for (double p : {0.0, 0.01, 0.1, 0.3, 0.45, 0.55, 0.8}) {
    CHECK(attempt_rate(p, 31, 1023) == doctest::Approx(closed_form(p, 31, 5)).epsilon(1e-12));
    CHECK(attempt_rate(p, 15, 1023) == doctest::Approx(closed_form(p, 15, 6)).epsilon(1e-12));
  }
  CHECK(std::isfinite(attempt_rate(0.5, 31, 1023)));
}

TEST_CASE("single contender never collides") {
  CHECK(solve_beta(1, 31, 1023) == doctest::Approx(2.0 / 33).epsilon(1e-15));
  const auto t = build_table(1, aptcp::builtin_profile(Standard::B11));
  CHECK(t.k_max() == 1);
  CHECK(t.beta(1) == doctest::Approx(2.0 / 33).epsilon(1e-15));
}

TEST_CASE("bisection agrees with fixed-point iteration") {
  for (int k : {2, 3, 5, 10, 20}) {
    CAPTURE(k);
    CHECK(solve_beta(k, 31, 1023) == doctest::Approx(iterate_map(k, 31, 5)).epsilon(1e-9));
    CHECK(solve_beta(k, 15, 1023) == doctest::Approx(iterate_map(k, 15, 6)).epsilon(1e-9));
  }
}

TEST_CASE("tables are monotone with tiny residuals") {
  const auto b = build_table(64, builtin_profile(Standard::B11));
  const auto g = build_table(64, builtin_profile(Standard::G54));
  CHECK(b.retry_stages() == 5);
  CHECK(g.retry_stages() == 6);
  for (int k = 1; k <= 64; ++k) {
    CAPTURE(k);
    CHECK(b.residual(k) < 1e-12);
    CHECK(g.residual(k) < 1e-12);
    CHECK(b.beta(k) > 0);
    CHECK(b.beta(k) < 1);
    CHECK(g.beta(k) > b.beta(k));
    if (k > 1) {
      CHECK(b.beta(k) < b.beta(k - 1));
      CHECK(g.beta(k) < g.beta(k - 1));
    }
  }
  // k * beta_k stays bounded.
  CHECK(64 * b.beta(64) < 1.0);
  CHECK_THROWS_AS(b.beta(0), std::out_of_range);
  CHECK_THROWS_AS(b.beta(65), std::out_of_range);
}

TEST_CASE("bad parameters") {
  CHECK_THROWS_AS(solve_beta(0, 31, 1023), std::invalid_argument);
  CHECK_THROWS_AS(solve_beta(2, 32, 1023), std::invalid_argument);
  CHECK_THROWS_AS(AccessProbTable(0, 31, 1023), std::invalid_argument);
}

TEST_CASE("CSV dump") {
  std::ostringstream os;
  build_table(3, builtin_profile(Standard::B11)).write_csv(os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,beta,residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
}

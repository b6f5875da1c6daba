#include "aptcp/saturation.hpp"

#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace aptcp {

namespace {

constexpr double kResidualLimit = 1e-12;
constexpr int kMaxBisections = 200;

void check_cw(int cw_min, int cw_max) {
  if (cw_min <= 0 || cw_min >= cw_max)
    throw std::invalid_argument("contention window: need 0 < cw_min < cw_max");
  if (!std::has_single_bit(static_cast<unsigned>(cw_min + 1)) ||
      !std::has_single_bit(static_cast<unsigned>(cw_max + 1)))
    throw std::invalid_argument("contention window: cw+1 must be a power of two");
}

}  // namespace

int backoff_stages(int cw_min, int cw_max) {
  check_cw(cw_min, cw_max);
  return std::countr_zero(static_cast<unsigned>(cw_max + 1)) -
         std::countr_zero(static_cast<unsigned>(cw_min + 1));
}

double attempt_rate(double p, int cw_min, int cw_max) {
  const int m = backoff_stages(cw_min, cw_max);
  const double w = cw_min + 1;
  // Mean slots per attempt at stage i is (2^i w + 1) / 2. Stage i is reached
  // with weight p^i; the last stage absorbs all further retries, so the sum is
  // multiplied through by (1 - p) to stay finite at p = 1/2 and p = 1.
  double slots = 0.0;
  double pi = 1.0;
  double wi = w;
  for (int i = 0; i < m; ++i) {
    slots += (1.0 - p) * pi * (wi + 1.0) / 2.0;
    pi *= p;
    wi *= 2.0;
  }
  slots += pi * (wi + 1.0) / 2.0;
  return 1.0 / slots;
}

double fixed_point_residual(double beta, int k, int cw_min, int cw_max) {
  const double p = 1.0 - std::pow(1.0 - beta, k - 1);
  return std::abs(beta - attempt_rate(p, cw_min, cw_max));
}

double solve_beta(int k, int cw_min, int cw_max) {
  if (k < 1) throw std::invalid_argument("solve_beta: need at least one contender");
  check_cw(cw_min, cw_max);
  if (k == 1) return attempt_rate(0.0, cw_min, cw_max);

  // f(beta) = beta - G(p(beta)) is increasing: f(0) < 0 < f(1).
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double p = 1.0 - std::pow(1.0 - mid, k - 1);
    if (mid - attempt_rate(p, cw_min, cw_max) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  const double beta = 0.5 * (lo + hi);
  const double res = fixed_point_residual(beta, k, cw_min, cw_max);
  if (!(res < kResidualLimit) || !(beta > 0.0 && beta < 1.0)) {
    throw NumericalError("solve_beta: no convergence for k=" + std::to_string(k) +
                         " (residual " + std::to_string(res) + ")");
  }
  return beta;
}

AccessProbTable::AccessProbTable(int k_max, int cw_min, int cw_max)
    : cw_min_(cw_min), cw_max_(cw_max), stages_(backoff_stages(cw_min, cw_max)) {
  if (k_max < 1) throw std::invalid_argument("AccessProbTable: k_max must be >= 1");
  betas_.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) betas_.push_back(solve_beta(k, cw_min, cw_max));
}

double AccessProbTable::beta(int k) const {
  if (k < 1 || k > k_max()) throw std::out_of_range("AccessProbTable: k out of range");
  return betas_[static_cast<std::size_t>(k - 1)];
}

double AccessProbTable::residual(int k) const {
  return fixed_point_residual(beta(k), k, cw_min_, cw_max_);
}

void AccessProbTable::write_csv(std::ostream& os) const {
  os << "k,beta,residual\n";
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  for (int k = 1; k <= k_max(); ++k) os << k << ',' << beta(k) << ',' << residual(k) << '\n';
  os.flags(flags);
  os.precision(prec);
}

AccessProbTable build_table(int k_max, const PhyProfile& profile) {
  return AccessProbTable(k_max, profile.cw_min, profile.cw_max);
}

}  // namespace aptcp

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "aptcp/phy_timing.hpp"

namespace aptcp {

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of window doublings from cw_min to cw_max.
int backoff_stages(int cw_min, int cw_max);

/// Attempt rate of a backlogged node whose attempts collide independently with
/// probability `collision_prob`: uniform backoff over [0, CW_i], CW doubling per
/// collision up to cw_max, unlimited retries.
double attempt_rate(double collision_prob, int cw_min, int cw_max);

/// Per-slot attempt probability of a saturated node when k nodes contend:
/// the root of beta = attempt_rate(1 - (1 - beta)^(k - 1)).
/// Throws std::invalid_argument on bad parameters, NumericalError if bisection
/// does not reach a residual below 1e-12.
double solve_beta(int k, int cw_min, int cw_max);

/// |beta - attempt_rate(1 - (1 - beta)^(k - 1))|.
double fixed_point_residual(double beta, int k, int cw_min, int cw_max);

class AccessProbTable {
 public:
  AccessProbTable(int k_max, int cw_min, int cw_max);

  /// beta_k for 1 <= k <= k_max().
  double beta(int k) const;
  double residual(int k) const;
  int k_max() const { return static_cast<int>(betas_.size()); }
  int cw_min() const { return cw_min_; }
  int cw_max() const { return cw_max_; }
  int retry_stages() const { return stages_; }

  /// CSV with header "k,beta,residual".
  void write_csv(std::ostream& os) const;

 private:
  int cw_min_;
  int cw_max_;
  int stages_;
  std::vector<double> betas_;
};

AccessProbTable build_table(int k_max, const PhyProfile& profile);

}  // namespace aptcp

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "aptcp/dcf_simulator.hpp"

namespace aptcp {

class InsufficientReplications : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Interval {
  double mean = 0.0;
  double half_width = 0.0;

  double lower() const { return mean - half_width; }
  double upper() const { return mean + half_width; }
  bool overlaps(const Interval& other) const {
    return lower() <= other.upper() && other.lower() <= upper();
  }
};

/// Student-t confidence interval for the mean. Needs at least two samples.
Interval confidence_interval(std::span<const double> samples, double level = 0.95);

struct SimulationReport {
  int replications = 0;
  Interval aggregate_bps;
  Interval download_bps;
  Interval upload_bps;
  std::vector<Interval> per_connection_bps;
  double empty_target_fraction = 0.0;  // mean over replications
};

SimulationReport estimate(std::span<const SimStats> stats, double level = 0.95);

}  // namespace aptcp

#include "aptcp/estimate.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

namespace aptcp {

Interval confidence_interval(std::span<const double> samples, double level) {
  if (samples.size() < 2)
    throw InsufficientReplications("confidence interval needs at least two replications");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level in (0,1)");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
  return {mean, t * sd / std::sqrt(n)};
}

SimulationReport estimate(std::span<const SimStats> stats, double level) {
  if (stats.size() < 2)
    throw InsufficientReplications("estimate needs at least two replications");
  const std::size_t conns = stats.front().segments_per_connection.size();

  std::vector<double> agg, down, up, empty;
  std::vector<std::vector<double>> per_conn(conns);
  for (const auto& s : stats) {
    if (s.segments_per_connection.size() != conns)
      throw std::invalid_argument("estimate: replications of different scenarios");
    agg.push_back(s.aggregate_bps());
    down.push_back(s.download_bps());
    up.push_back(s.upload_bps());
    empty.push_back(s.empty_target_fraction());
    for (std::size_t c = 0; c < conns; ++c) per_conn[c].push_back(s.connection_bps(c));
  }

  SimulationReport r;
  r.replications = static_cast<int>(stats.size());
  r.aggregate_bps = confidence_interval(agg, level);
  r.download_bps = confidence_interval(down, level);
  r.upload_bps = confidence_interval(up, level);
  for (const auto& samples : per_conn) r.per_connection_bps.push_back(confidence_interval(samples, level));
  r.empty_target_fraction =
      std::accumulate(empty.begin(), empty.end(), 0.0) / static_cast<double>(empty.size());
  return r;
}

}  // namespace aptcp

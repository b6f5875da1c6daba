#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aptcp/phy_timing.hpp"
#include "aptcp/scenario.hpp"

namespace aptcp {

/// How the AP picks its next frame.
///  - WindowMix: a connection with frames at the AP, drawn with probability
///    proportional to its window (so data vs. TCP-ACK follows W_d : W_u).
///  - Fifo: strict arrival order.
enum class ApDiscipline { WindowMix, Fifo };

struct SimConfig {
  double horizon_s = 20.0;
  double warmup_s = 2.0;
  std::uint64_t seed = 1;
  ApDiscipline ap_discipline = ApDiscipline::WindowMix;
  AckTiming fidelity = AckTiming::PaperFidelity;
};

struct NodeCounters {
  std::uint64_t attempts = 0;
  std::uint64_t successes = 0;
  std::uint64_t backoff_slots = 0;  // idle slots counted down while backlogged

  /// attempts / (backoff slots + attempts): attempts per slot of the node's own backoff time.
  double attempt_frequency() const;
};

/// Outcome of one replication. Node 0 is the AP; node i + 1 is the station of
/// connection i. Segment counts under `measured` cover (warmup, horizon].
struct SimStats {
  std::uint64_t seed = 0;
  double horizon_s = 0.0;
  double warmup_s = 0.0;
  std::size_t payload_bytes = 0;

  std::uint64_t download_segments = 0;
  std::uint64_t upload_segments = 0;
  std::vector<std::uint64_t> segments_per_connection;

  // Whole-run channel accounting; elapsed_s equals
  // idle_slots * slot + success_time_s + collision_time_s.
  double elapsed_s = 0.0;
  double slot_time_s = 0.0;
  std::uint64_t idle_slots = 0;
  std::uint64_t successes = 0;
  std::uint64_t collisions = 0;
  double success_time_s = 0.0;
  double collision_time_s = 0.0;
  std::vector<NodeCounters> nodes;

  // Whole-run TCP bookkeeping per connection.
  std::vector<std::uint64_t> data_delivered;  // segments reaching their receiver
  std::vector<std::uint64_t> acks_delivered;  // TCP-ACKs reaching the data sender
  std::vector<int> max_in_flight;

  std::uint64_t ap_successes = 0;
  std::uint64_t ap_successes_to_empty_sta = 0;

  double measured_s() const { return horizon_s - warmup_s; }
  double download_bps() const;
  double upload_bps() const;
  double aggregate_bps() const { return download_bps() + upload_bps(); }
  double connection_bps(std::size_t i) const;
  /// Share of AP successes whose target station had an empty MAC queue.
  double empty_target_fraction() const;
};

/// Simulate slotted DCF with window-limited TCP connections through the AP.
/// Deterministic in (scenario, profile, config).
SimStats run(const Scenario& scenario, const PhyProfile& profile, const SimConfig& config);

/// Independent replications with seeds base_seed, base_seed + 1, ...
/// Results are ordered by replication index regardless of `threads`.
std::vector<SimStats> run_replications(const Scenario& scenario, const PhyProfile& profile,
                                       const SimConfig& config, int replications,
                                       unsigned threads = 0);

struct SaturationStats {
  int contenders = 0;
  std::uint64_t epochs = 0;  // idle slots + busy periods
  std::vector<NodeCounters> nodes;

  /// Mean per-node attempt frequency.
  double attempt_frequency() const;
};

/// k permanently backlogged nodes with the profile's backoff parameters, for
/// `epochs` channel epochs.
SaturationStats run_saturated(int k, const PhyProfile& profile, std::uint64_t epochs,
                              std::uint64_t seed);

/// One JSON object (no trailing newline) describing a replication.
std::string to_json_line(const SimStats& stats);

}  // namespace aptcp

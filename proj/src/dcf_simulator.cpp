#include "aptcp/dcf_simulator.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace aptcp {

namespace {

using Rng = std::mt19937_64;

struct Mac {
  int cw = 0;
  int counter = 0;
  bool backlogged = false;
};

void draw_backoff(Mac& mac, Rng& rng) {
  mac.counter = std::uniform_int_distribution<int>(0, mac.cw)(rng);
}

int doubled(int cw, int cw_max) { return std::min(2 * (cw + 1) - 1, cw_max); }

/// Counts down idle slots until some backlogged node reaches zero. Returns the
/// number of idle slots and leaves the transmitting nodes in `ready`.
std::uint64_t next_attempts(std::vector<Mac>& macs, std::vector<NodeCounters>& counters,
                            std::vector<int>& ready) {
  int idle = -1;
  for (const auto& m : macs) {
    if (m.backlogged && (idle < 0 || m.counter < idle)) idle = m.counter;
  }
  if (idle < 0) throw std::logic_error("DCF: no backlogged node");
  ready.clear();
  for (std::size_t i = 0; i < macs.size(); ++i) {
    auto& m = macs[i];
    if (!m.backlogged) continue;
    m.counter -= idle;
    counters[i].backoff_slots += static_cast<std::uint64_t>(idle);
    if (m.counter == 0) ready.push_back(static_cast<int>(i));
  }
  return static_cast<std::uint64_t>(idle);
}

enum class Frame { Data, Ack };

class WlanSimulation {
 public:
  WlanSimulation(const Scenario& scenario, const PhyProfile& profile, const SimConfig& config)
      : scenario_(scenario),
        profile_(profile),
        config_(config),
        durations_(exchange_durations(profile, config.fidelity)),
        rng_(config.seed) {
    const std::size_t n = scenario.size();
    macs_.assign(n + 1, Mac{profile.cw_min, 0, false});
    ap_backlog_.assign(n, 0);
    sta_queue_.assign(n, 0);

    stats_.seed = config.seed;
    stats_.horizon_s = config.horizon_s;
    stats_.warmup_s = config.warmup_s;
    stats_.payload_bytes = profile.tcp_data_payload_bytes;
    stats_.slot_time_s = profile.slot_time_s;
    stats_.segments_per_connection.assign(n, 0);
    stats_.nodes.assign(n + 1, {});
    stats_.data_delivered.assign(n, 0);
    stats_.acks_delivered.assign(n, 0);
    stats_.max_in_flight.assign(n, 0);
  }

  SimStats run() {
    fill_pipes();
    std::vector<int> ready;
    while (now_ < config_.horizon_s) {
      const auto idle = next_attempts(macs_, stats_.nodes, ready);
      stats_.idle_slots += idle;
      now_ += static_cast<double>(idle) * profile_.slot_time_s;
      for (int node : ready) ++stats_.nodes[static_cast<std::size_t>(node)].attempts;
      if (ready.size() == 1)
        succeed(ready.front());
      else
        collide(ready);
    }
    stats_.elapsed_s = now_;
    return std::move(stats_);
  }

 private:
  std::size_t conn_of(int node) const { return static_cast<std::size_t>(node - 1); }
  int sta_node(std::size_t conn) const { return static_cast<int>(conn) + 1; }
  bool is_download(std::size_t conn) const {
    return scenario_.connections()[conn].direction == Direction::Download;
  }

  Frame frame_of(int node) const {
    if (node == 0) return is_download(static_cast<std::size_t>(ap_head_)) ? Frame::Data : Frame::Ack;
    return is_download(conn_of(node)) ? Frame::Ack : Frame::Data;
  }

  bool measuring() const { return now_ > config_.warmup_s && now_ <= config_.horizon_s; }

  void fill_pipes() {
    const auto& conns = scenario_.connections();
    for (std::size_t c = 0; c < conns.size(); ++c) {
      if (conns[c].direction == Direction::Download)
        ap_backlog_[c] = conns[c].max_window_pkts;
      else
        sta_queue_[c] = conns[c].max_window_pkts;
      note_in_flight(c);
    }
    // Round-robin over download connections for the initial FIFO order.
    for (int round = 0; config_.ap_discipline == ApDiscipline::Fifo; ++round) {
      bool any = false;
      for (std::size_t c = 0; c < conns.size(); ++c) {
        if (conns[c].direction == Direction::Download && round < conns[c].max_window_pkts) {
          fifo_.push_back(c);
          any = true;
        }
      }
      if (!any) break;
    }
    for (std::size_t c = 0; c < conns.size(); ++c) {
      if (sta_queue_[c] > 0) activate(sta_node(c));
    }
    if (select_ap_head()) activate(0);
  }

  void activate(int node) {
    auto& mac = macs_[static_cast<std::size_t>(node)];
    mac.backlogged = true;
    draw_backoff(mac, rng_);
  }

  bool select_ap_head() {
    if (config_.ap_discipline == ApDiscipline::Fifo) {
      if (fifo_.empty()) {
        ap_head_ = -1;
        return false;
      }
      ap_head_ = static_cast<int>(fifo_.front());
      return true;
    }
    long eligible = 0;
    const auto& conns = scenario_.connections();
    for (std::size_t c = 0; c < conns.size(); ++c) {
      if (ap_backlog_[c] > 0) eligible += conns[c].max_window_pkts;
    }
    if (eligible == 0) {
      ap_head_ = -1;
      return false;
    }
    long u = std::uniform_int_distribution<long>(0, eligible - 1)(rng_);
    for (std::size_t c = 0; c < conns.size(); ++c) {
      if (ap_backlog_[c] == 0) continue;
      u -= conns[c].max_window_pkts;
      if (u < 0) {
        ap_head_ = static_cast<int>(c);
        return true;
      }
    }
    throw std::logic_error("DCF: AP frame selection fell through");
  }

  void enqueue_at_ap(std::size_t conn) {
    ++ap_backlog_[conn];
    if (config_.ap_discipline == ApDiscipline::Fifo) fifo_.push_back(conn);
    note_in_flight(conn);
    if (!macs_[0].backlogged && select_ap_head()) activate(0);
  }

  void enqueue_at_sta(std::size_t conn) {
    const bool was_empty = sta_queue_[conn] == 0;
    ++sta_queue_[conn];
    note_in_flight(conn);
    if (was_empty) activate(sta_node(conn));
  }

  void note_in_flight(std::size_t conn) {
    stats_.max_in_flight[conn] =
        std::max(stats_.max_in_flight[conn], ap_backlog_[conn] + sta_queue_[conn]);
  }

  void succeed(int node) {
    const Frame frame = frame_of(node);
    const double d = frame == Frame::Data ? durations_.t_data_s : durations_.t_ack_s;
    now_ += d;
    stats_.success_time_s += d;
    ++stats_.successes;
    ++stats_.nodes[static_cast<std::size_t>(node)].successes;

    auto& mac = macs_[static_cast<std::size_t>(node)];
    mac.cw = profile_.cw_min;

    if (node == 0) {
      const auto conn = static_cast<std::size_t>(ap_head_);
      --ap_backlog_[conn];
      if (config_.ap_discipline == ApDiscipline::Fifo) fifo_.pop_front();
      ++stats_.ap_successes;
      if (sta_queue_[conn] == 0) ++stats_.ap_successes_to_empty_sta;
      if (frame == Frame::Data) deliver_segment(conn);
      else ++stats_.acks_delivered[conn];
      // Segment reaches a downloader (which owes an ACK), or an ACK reaches an
      // uploader (which may release one more segment).
      enqueue_at_sta(conn);
      mac.backlogged = false;
      if (select_ap_head()) activate(0);
    } else {
      const auto conn = conn_of(node);
      --sta_queue_[conn];
      if (frame == Frame::Data) deliver_segment(conn);
      else ++stats_.acks_delivered[conn];
      mac.backlogged = false;
      if (sta_queue_[conn] > 0) activate(node);
      // Zero-RTT wired side: an upload segment is ACKed at once, a download ACK
      // releases the next segment at once.
      enqueue_at_ap(conn);
    }
  }

  void deliver_segment(std::size_t conn) {
    ++stats_.data_delivered[conn];
    if (!measuring()) return;
    ++stats_.segments_per_connection[conn];
    if (is_download(conn))
      ++stats_.download_segments;
    else
      ++stats_.upload_segments;
  }

  void collide(const std::vector<int>& nodes) {
    double d = 0.0;
    for (int node : nodes) {
      const double len = frame_of(node) == Frame::Data ? durations_.t_colli_rts_s
                                                       : durations_.t_colli_tcpack_s;
      d = std::max(d, len);
    }
    now_ += d;
    stats_.collision_time_s += d;
    ++stats_.collisions;
    for (int node : nodes) {
      auto& mac = macs_[static_cast<std::size_t>(node)];
      mac.cw = doubled(mac.cw, profile_.cw_max);
      draw_backoff(mac, rng_);
    }
  }

  const Scenario& scenario_;
  const PhyProfile& profile_;
  const SimConfig& config_;
  ExchangeDurations durations_;
  Rng rng_;

  std::vector<Mac> macs_;
  std::vector<int> ap_backlog_;
  std::vector<int> sta_queue_;
  std::deque<std::size_t> fifo_;
  int ap_head_ = -1;
  double now_ = 0.0;
  SimStats stats_;
};

}  // namespace

double NodeCounters::attempt_frequency() const {
  const auto slots = backoff_slots + attempts;
  return slots == 0 ? 0.0 : static_cast<double>(attempts) / static_cast<double>(slots);
}

double SimStats::download_bps() const {
  return static_cast<double>(download_segments) * 8.0 * static_cast<double>(payload_bytes) /
         measured_s();
}

double SimStats::upload_bps() const {
  return static_cast<double>(upload_segments) * 8.0 * static_cast<double>(payload_bytes) /
         measured_s();
}

double SimStats::connection_bps(std::size_t i) const {
  return static_cast<double>(segments_per_connection.at(i)) * 8.0 *
         static_cast<double>(payload_bytes) / measured_s();
}

double SimStats::empty_target_fraction() const {
  return ap_successes == 0 ? 0.0
                           : static_cast<double>(ap_successes_to_empty_sta) /
                                 static_cast<double>(ap_successes);
}

SimStats run(const Scenario& scenario, const PhyProfile& profile, const SimConfig& config) {
  profile.validate();
  if (!(config.horizon_s > 0.0)) throw std::invalid_argument("simulation horizon must be positive");
  if (!(config.warmup_s >= 0.0 && config.warmup_s < config.horizon_s))
    throw std::invalid_argument("warm-up must lie in [0, horizon)");
  return WlanSimulation(scenario, profile, config).run();
}

std::vector<SimStats> run_replications(const Scenario& scenario, const PhyProfile& profile,
                                       const SimConfig& config, int replications,
                                       unsigned threads) {
  if (replications < 1) throw std::invalid_argument("need at least one replication");
  std::vector<SimStats> results(static_cast<std::size_t>(replications));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(replications));

  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (int r = next++; r < replications; r = next++) {
        SimConfig cfg = config;
        cfg.seed = config.seed + static_cast<std::uint64_t>(r);
        results[static_cast<std::size_t>(r)] = run(scenario, profile, cfg);
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

double SaturationStats::attempt_frequency() const {
  double sum = 0.0;
  for (const auto& n : nodes) sum += n.attempt_frequency();
  return nodes.empty() ? 0.0 : sum / static_cast<double>(nodes.size());
}

SaturationStats run_saturated(int k, const PhyProfile& profile, std::uint64_t epochs,
                              std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("run_saturated: need at least one node");
  profile.validate();
  Rng rng(seed);
  std::vector<Mac> macs(static_cast<std::size_t>(k), Mac{profile.cw_min, 0, true});
  for (auto& m : macs) draw_backoff(m, rng);

  SaturationStats out;
  out.contenders = k;
  out.nodes.assign(static_cast<std::size_t>(k), {});
  std::vector<int> ready;
  while (out.epochs < epochs) {
    out.epochs += next_attempts(macs, out.nodes, ready) + 1;
    const bool success = ready.size() == 1;
    for (int node : ready) {
      auto& mac = macs[static_cast<std::size_t>(node)];
      auto& ctr = out.nodes[static_cast<std::size_t>(node)];
      ++ctr.attempts;
      if (success) {
        ++ctr.successes;
        mac.cw = profile.cw_min;
      } else {
        mac.cw = doubled(mac.cw, profile.cw_max);
      }
      draw_backoff(mac, rng);
    }
  }
  return out;
}

std::string to_json_line(const SimStats& s) {
  nlohmann::json j;
  j["version"] = APTCP_VERSION;
  j["seed"] = s.seed;
  j["horizon_s"] = s.horizon_s;
  j["warmup_s"] = s.warmup_s;
  j["elapsed_s"] = s.elapsed_s;
  j["download_bits"] = s.download_segments * 8 * s.payload_bytes;
  j["upload_bits"] = s.upload_segments * 8 * s.payload_bytes;
  j["segments_per_connection"] = s.segments_per_connection;
  j["idle_slots"] = s.idle_slots;
  j["successes"] = s.successes;
  j["collisions"] = s.collisions;
  j["empty_target_fraction"] = s.empty_target_fraction();
  return j.dump();
}

}  // namespace aptcp

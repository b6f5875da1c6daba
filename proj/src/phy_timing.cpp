#include "aptcp/phy_timing.hpp"

#include <bit>
#include <stdexcept>

namespace aptcp {

namespace {

constexpr double kMicro = 1e-6;

struct RateEntry {
  Standard standard;
  std::string_view name;
  double data_rate_bps;
};

constexpr std::array<RateEntry, 10> kRates = {{
    {Standard::B11, "802.11b@11", 11e6},
    {Standard::B5_5, "802.11b@5.5", 5.5e6},
    {Standard::B2, "802.11b@2", 2e6},
    {Standard::G54, "802.11g@54", 54e6},
    {Standard::G48, "802.11g@48", 48e6},
    {Standard::G36, "802.11g@36", 36e6},
    {Standard::G24, "802.11g@24", 24e6},
    {Standard::G18, "802.11g@18", 18e6},
    {Standard::G12, "802.11g@12", 12e6},
    {Standard::G6, "802.11g@6", 6e6},
}};

const RateEntry& entry(Standard standard) {
  for (const auto& e : kRates) {
    if (e.standard == standard) return e;
  }
  throw std::logic_error("unknown standard");
}

bool is_b(Standard s) {
  return s == Standard::B11 || s == Standard::B5_5 || s == Standard::B2;
}

bool power_of_two(int v) { return v > 0 && std::has_single_bit(static_cast<unsigned>(v)); }

}  // namespace

void PhyProfile::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid PHY profile: ") + what);
  };
  require(data_rate_bps > 0 && control_rate_bps > 0, "rates must be positive");
  require(data_rate_bps >= control_rate_bps, "data rate below control rate");
  require(preamble_time_s >= 0, "negative preamble time");
  require(phy_header_time_s > 0 && slot_time_s > 0 && sifs_s > 0 && difs_s > 0 && eifs_s > 0,
          "durations must be positive");
  require(cw_min > 0 && cw_min < cw_max, "need 0 < cw_min < cw_max");
  require(power_of_two(cw_min + 1) && power_of_two(cw_max + 1), "cw+1 must be a power of two");
  require(mac_header_bytes > 0 && rts_bytes > 0 && cts_bytes > 0 && mac_ack_bytes > 0 &&
              ip_header_bytes > 0 && tcp_header_bytes > 0 && tcp_ack_payload_bytes > 0 &&
              tcp_data_payload_bytes > 0,
          "frame sizes must be positive");
}

PhyProfile builtin_profile(Standard standard) {
  PhyProfile p;
  p.data_rate_bps = entry(standard).data_rate_bps;
  p.mac_header_bytes = 34;
  p.rts_bytes = 20;
  p.cts_bytes = 14;
  p.mac_ack_bytes = 14;
  p.ip_header_bytes = 20;
  p.tcp_header_bytes = 20;
  p.tcp_ack_payload_bytes = 20;
  p.tcp_data_payload_bytes = 1460;
  p.sifs_s = 10 * kMicro;
  p.eifs_s = 364 * kMicro;
  p.cw_max = 1023;
  if (is_b(standard)) {
    p.control_rate_bps = 2e6;
    p.preamble_time_s = 144 * kMicro;
    p.phy_header_time_s = 48 * kMicro;
    p.slot_time_s = 20 * kMicro;
    p.difs_s = 50 * kMicro;
    p.cw_min = 31;
  } else {
    // OFDM: the 20 us PLCP covers preamble and header.
    p.control_rate_bps = 6e6;
    p.preamble_time_s = 0.0;
    p.phy_header_time_s = 20 * kMicro;
    p.slot_time_s = 9 * kMicro;
    p.difs_s = 28 * kMicro;
    p.cw_min = 15;
  }
  return p;
}

std::string_view profile_name(Standard standard) { return entry(standard).name; }

std::optional<Standard> parse_profile_name(std::string_view name) {
  for (const auto& e : kRates) {
    if (e.name == name) return e.standard;
  }
  return std::nullopt;
}

double frame_airtime(std::size_t bytes, double rate_bps, const PhyProfile& profile) {
  if (bytes == 0) throw std::invalid_argument("frame_airtime: frame must carry at least one byte");
  if (!(rate_bps > 0)) throw std::invalid_argument("frame_airtime: rate must be positive");
  return profile.preamble_time_s + profile.phy_header_time_s +
         8.0 * static_cast<double>(bytes) / rate_bps;
}

std::size_t data_frame_bytes(const PhyProfile& p) {
  return p.mac_header_bytes + p.ip_header_bytes + p.tcp_header_bytes + p.tcp_data_payload_bytes;
}

std::size_t tcp_ack_frame_bytes(const PhyProfile& p) {
  return p.mac_header_bytes + p.ip_header_bytes + p.tcp_ack_payload_bytes;
}

double t_data(const PhyProfile& p) {
  const double rts = frame_airtime(p.rts_bytes, p.control_rate_bps, p);
  const double cts = frame_airtime(p.cts_bytes, p.control_rate_bps, p);
  const double data = frame_airtime(data_frame_bytes(p), p.data_rate_bps, p);
  const double ack = frame_airtime(p.mac_ack_bytes, p.control_rate_bps, p);
  return rts + p.sifs_s + cts + p.sifs_s + data + p.sifs_s + ack + p.difs_s;
}

double t_ack(const PhyProfile& p, AckTiming fidelity) {
  const double mac_ack_rate =
      fidelity == AckTiming::PaperFidelity ? p.data_rate_bps : p.control_rate_bps;
  const double frame = frame_airtime(tcp_ack_frame_bytes(p), p.data_rate_bps, p);
  const double ack = frame_airtime(p.mac_ack_bytes, mac_ack_rate, p);
  return frame + p.sifs_s + ack + p.difs_s;
}

CollisionDurations collision_durations(const PhyProfile& p) {
  return {
      .rts_s = frame_airtime(p.rts_bytes, p.control_rate_bps, p) + p.eifs_s,
      .tcp_ack_s = frame_airtime(tcp_ack_frame_bytes(p), p.data_rate_bps, p) + p.eifs_s,
  };
}

ExchangeDurations exchange_durations(const PhyProfile& profile, AckTiming fidelity) {
  const auto colli = collision_durations(profile);
  return {
      .t_data_s = t_data(profile),
      .t_ack_s = t_ack(profile, fidelity),
      .t_colli_rts_s = colli.rts_s,
      .t_colli_tcpack_s = colli.tcp_ack_s,
  };
}

std::string_view to_string(AckTiming fidelity) {
  return fidelity == AckTiming::PaperFidelity ? "paper" : "standards";
}

}  // namespace aptcp

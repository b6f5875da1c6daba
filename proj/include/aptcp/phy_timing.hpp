#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace aptcp {

/// PHY standard and data rate of a single-rate association.
enum class Standard { B11, B5_5, B2, G54, G48, G36, G24, G18, G12, G6 };

inline constexpr std::array<Standard, 10> kAllStandards = {
    Standard::B11, Standard::B5_5, Standard::B2,  Standard::G54, Standard::G48,
    Standard::G36, Standard::G24,  Standard::G18, Standard::G12, Standard::G6};

/// Rate used for the MAC-ACK that closes a basic-access TCP-ACK exchange.
///  - PaperFidelity: MAC-ACK at the data rate.
///  - StandardsMode: MAC-ACK at the control rate.
enum class AckTiming { PaperFidelity, StandardsMode };

struct PhyProfile {
  double data_rate_bps = 0.0;
  double control_rate_bps = 0.0;
  double preamble_time_s = 0.0;
  double phy_header_time_s = 0.0;
  double slot_time_s = 0.0;
  double sifs_s = 0.0;
  double difs_s = 0.0;
  double eifs_s = 0.0;
  int cw_min = 0;
  int cw_max = 0;
  std::size_t mac_header_bytes = 0;
  std::size_t rts_bytes = 0;
  std::size_t cts_bytes = 0;
  std::size_t mac_ack_bytes = 0;
  std::size_t ip_header_bytes = 0;
  std::size_t tcp_header_bytes = 0;
  std::size_t tcp_ack_payload_bytes = 0;
  std::size_t tcp_data_payload_bytes = 0;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  bool operator==(const PhyProfile&) const = default;
};

/// Durations of the four channel events a contention cycle can end in or pass through.
struct ExchangeDurations {
  double t_data_s = 0.0;          // RTS/CTS/DATA/ACK exchange plus DIFS
  double t_ack_s = 0.0;           // basic-access TCP-ACK exchange plus DIFS
  double t_colli_rts_s = 0.0;     // collision where an RTS is the longest frame
  double t_colli_tcpack_s = 0.0;  // collision where a TCP-ACK frame is the longest
};

struct CollisionDurations {
  double rts_s = 0.0;
  double tcp_ack_s = 0.0;
};

PhyProfile builtin_profile(Standard standard);

/// Canonical name, e.g. "802.11b@11" or "802.11g@54".
std::string_view profile_name(Standard standard);
std::optional<Standard> parse_profile_name(std::string_view name);

/// T_p + T_PHY + 8*bytes/rate. Requires bytes > 0 and rate_bps > 0.
double frame_airtime(std::size_t bytes, double rate_bps, const PhyProfile& profile);

std::size_t data_frame_bytes(const PhyProfile& profile);
std::size_t tcp_ack_frame_bytes(const PhyProfile& profile);

double t_data(const PhyProfile& profile);
double t_ack(const PhyProfile& profile, AckTiming fidelity);
CollisionDurations collision_durations(const PhyProfile& profile);
ExchangeDurations exchange_durations(const PhyProfile& profile, AckTiming fidelity);

std::string_view to_string(AckTiming fidelity);

}  // namespace aptcp

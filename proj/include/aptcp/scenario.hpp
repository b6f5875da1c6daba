#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace aptcp {

enum class Direction { Upload, Download };

std::string_view to_string(Direction d);

/// One long-lived TCP connection between a station and the wired server.
struct Connection {
  Direction direction = Direction::Download;
  int max_window_pkts = 1;

  bool operator==(const Connection&) const = default;
};

/// The set of connections served by one AP, with window totals per direction.
class Scenario {
 public:
  /// Throws std::invalid_argument if empty or any window < 1.
  explicit Scenario(std::vector<Connection> connections);

  static Scenario from_windows(std::span<const int> download_windows,
                               std::span<const int> upload_windows);

  const std::vector<Connection>& connections() const { return connections_; }
  std::size_t size() const { return connections_.size(); }

  int uploads() const { return uploads_; }
  int downloads() const { return downloads_; }
  long upload_window() const { return upload_window_; }
  long download_window() const { return download_window_; }
  long total_window() const { return upload_window_ + download_window_; }

  /// Fraction of AP transmissions that are data segments (W_d / W).
  double p_download() const;
  /// Fraction of AP transmissions that are TCP-ACKs for uploads (W_u / W).
  double p_upload() const;

  /// Copy with every window multiplied by `factor` (>= 1).
  Scenario scaled(int factor) const;

  bool operator==(const Scenario& other) const { return connections_ == other.connections_; }

 private:
  std::vector<Connection> connections_;
  int uploads_ = 0;
  int downloads_ = 0;
  long upload_window_ = 0;
  long download_window_ = 0;
};

}  // namespace aptcp

#include "aptcp/scenario.hpp"

#include <stdexcept>
#include <string>

namespace aptcp {

std::string_view to_string(Direction d) { return d == Direction::Upload ? "upload" : "download"; }

Scenario::Scenario(std::vector<Connection> connections) : connections_(std::move(connections)) {
  if (connections_.empty()) throw std::invalid_argument("scenario has no connections");
  for (std::size_t i = 0; i < connections_.size(); ++i) {
    const auto& c = connections_[i];
    if (c.max_window_pkts < 1) {
      throw std::invalid_argument("connection " + std::to_string(i) +
                                  ": window must be at least one packet");
    }
    if (c.direction == Direction::Upload) {
      ++uploads_;
      upload_window_ += c.max_window_pkts;
    } else {
      ++downloads_;
      download_window_ += c.max_window_pkts;
    }
  }
}

Scenario Scenario::from_windows(std::span<const int> download_windows,
                                std::span<const int> upload_windows) {
  std::vector<Connection> conns;
  conns.reserve(download_windows.size() + upload_windows.size());
  for (int w : download_windows) conns.push_back({Direction::Download, w});
  for (int w : upload_windows) conns.push_back({Direction::Upload, w});
  return Scenario(std::move(conns));
}

double Scenario::p_download() const {
  return static_cast<double>(download_window_) / static_cast<double>(total_window());
}

double Scenario::p_upload() const {
  return static_cast<double>(upload_window_) / static_cast<double>(total_window());
}

Scenario Scenario::scaled(int factor) const {
  if (factor < 1) throw std::invalid_argument("scale factor must be >= 1");
  auto conns = connections_;
  for (auto& c : conns) c.max_window_pkts *= factor;
  return Scenario(std::move(conns));
}

}  // namespace aptcp

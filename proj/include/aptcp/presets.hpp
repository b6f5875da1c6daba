#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aptcp/phy_timing.hpp"
#include "aptcp/scenario.hpp"

namespace aptcp {

/// Stations per window size (24, 20 and 16 packets) in one direction.
struct WindowCounts {
  int w24 = 0;
  int w20 = 0;
  int w16 = 0;

  std::vector<int> expand() const;
};

struct TableRow {
  std::string label;
  Standard profile = Standard::B11;
  std::vector<int> download_windows;
  std::vector<int> upload_windows;
  // Published reference values in Mbps, where the row has them.
  std::optional<double> golden_mbps;
  std::optional<double> golden_download_mbps;
  std::optional<double> golden_upload_mbps;
  std::optional<double> golden_sim_mbps;

  Scenario scenario() const { return Scenario::from_windows(download_windows, upload_windows); }
};

struct TablePreset {
  std::string name;
  std::string title;
  bool split = false;  // rows carry download/upload reference values
  std::vector<TableRow> rows;
};

/// "table1" (802.11b), "table2" (802.11g), "table3" (802.11g split).
/// Throws std::invalid_argument for other names.
const TablePreset& table_preset(std::string_view name);

std::vector<std::string_view> preset_names();

}  // namespace aptcp

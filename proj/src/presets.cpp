#include "aptcp/presets.hpp"

#include <stdexcept>

namespace aptcp {

std::vector<int> WindowCounts::expand() const {
  std::vector<int> out;
  out.insert(out.end(), static_cast<std::size_t>(w24), 24);
  out.insert(out.end(), static_cast<std::size_t>(w20), 20);
  out.insert(out.end(), static_cast<std::size_t>(w16), 16);
  return out;
}

namespace {

TableRow row(std::string label, Standard s, WindowCounts down, WindowCounts up, double analysis,
             double simulation) {
  TableRow r;
  r.label = std::move(label);
  r.profile = s;
  r.download_windows = down.expand();
  r.upload_windows = up.expand();
  r.golden_mbps = analysis;
  r.golden_sim_mbps = simulation;
  return r;
}

TablePreset make_table1() {
  TablePreset t{"table1", "Aggregate AP throughput, 802.11b", false, {}};
  t.rows = {
      row("11-a", Standard::B11, {1, 2, 3}, {4, 2, 3}, 4.38, 4.37),
      row("11-b", Standard::B11, {2, 1, 3}, {4, 2, 3}, 4.38, 4.37),
      row("5.5-a", Standard::B5_5, {3, 2, 1}, {4, 2, 3}, 3.04, 3.04),
      row("5.5-b", Standard::B5_5, {4, 3, 2}, {1, 3, 2}, 3.04, 3.04),
      row("2-a", Standard::B2, {3, 2, 4}, {3, 1, 2}, 1.5, 1.5),
      row("2-b", Standard::B2, {3, 2, 4}, {3, 2, 1}, 1.5, 1.5),
  };
  return t;
}

TablePreset make_table2() {
  TablePreset t{"table2", "Aggregate AP throughput, 802.11g", false, {}};
  t.rows = {
      row("54-a", Standard::G54, {1, 2, 3}, {4, 2, 3}, 22.61, 22.5),
      row("54-b", Standard::G54, {4, 1, 2}, {2, 1, 3}, 22.61, 22.56),
      row("48-a", Standard::G48, {3, 2, 1}, {4, 2, 3}, 19.68, 19.54),
      row("48-b", Standard::G48, {4, 3, 2}, {1, 3, 4}, 19.68, 19.53),
      row("36-a", Standard::G36, {3, 2, 1}, {4, 2, 3}, 14.94, 14.92),
      row("36-b", Standard::G36, {4, 3, 2}, {1, 3, 2}, 14.94, 14.92),
      row("12-a", Standard::G12, {3, 2, 4}, {3, 1, 2}, 5.16, 5.15),
      row("12-b", Standard::G12, {3, 2, 1}, {3, 2, 4}, 5.16, 5.14),
  };
  return t;
}

TablePreset make_table3() {
  TablePreset t = make_table2();
  t.name = "table3";
  t.title = "Download/upload split of AP throughput, 802.11g";
  t.split = true;
  const double split[8][2] = {{8.56, 13.987}, {12.68, 9.935}, {8.074, 11.524}, {11.011, 8.603},
                              {6.13, 8.799},  {9.24, 5.693},  {3.027, 2.127},  {2.173, 2.976}};
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    t.rows[i].golden_download_mbps = split[i][0];
    t.rows[i].golden_upload_mbps = split[i][1];
  }
  return t;
}

}  // namespace

const TablePreset& table_preset(std::string_view name) {
  static const TablePreset t1 = make_table1();
  static const TablePreset t2 = make_table2();
  static const TablePreset t3 = make_table3();
  if (name == "table1") return t1;
  if (name == "table2") return t2;
  if (name == "table3") return t3;
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (expected table1, table2 or table3)");
}

std::vector<std::string_view> preset_names() { return {"table1", "table2", "table3"}; }

}  // namespace aptcp

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aptcp/analytic_model.hpp"
#include "aptcp/estimate.hpp"
#include "aptcp/presets.hpp"
#include "aptcp/run_config.hpp"

namespace aptcp {

struct RowResult {
  TableRow row;
  std::optional<ThroughputReport> analysis;
  std::optional<SimulationReport> simulation;  // set when >= 2 replications ran
  std::optional<double> sim_single_bps;        // set when exactly one replication ran
  std::optional<std::string> error;

  std::optional<double> sim_mean_bps() const;
  /// |analysis - simulation| / analysis, when both exist.
  std::optional<double> sim_rel_error() const;
  /// (analysis - reference) / reference, when both exist.
  std::optional<double> golden_rel_error() const;
};

struct TableDocument {
  std::string title;
  std::string source;  // "preset:<name>" or "config:<name>"
  RunSettings settings;
  std::vector<RowResult> rows;

  /// Exit contract: no row failed, and every row with both analysis and
  /// simulation agrees within settings.tolerance_pct.
  bool ok() const;
};

/// Evaluate rows under `settings`. Row i simulates with seeds starting at
/// settings.seed + (i << 32). Per-replication JSON lines go to `replication_log`.
TableDocument run_rows(std::string title, std::string source, const std::vector<TableRow>& rows,
                       const RunSettings& settings, std::ostream* replication_log = nullptr);

TableDocument run_tables(const TablePreset& preset, const RunSettings& settings,
                         std::ostream* replication_log = nullptr);
TableDocument run_tables(const RunConfig& config, std::ostream* replication_log = nullptr);

std::string render(const TableDocument& doc, OutputFormat format);

/// Header of the CSV rendering.
std::string_view csv_header();

}  // namespace aptcp

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aptcp/analytic_model.hpp"
#include "aptcp/dcf_simulator.hpp"
#include "aptcp/phy_timing.hpp"
#include "aptcp/scenario.hpp"

namespace aptcp {

enum class Mode { Analyze, Simulate, Both };
enum class OutputFormat { Csv, Json, Markdown };

std::string_view to_string(Mode mode);
std::string_view to_string(OutputFormat format);
std::string_view to_string(ApDiscipline discipline);

/// Parse helpers shared by the config reader and the command line. Each throws
/// std::invalid_argument naming the accepted values.
Mode parse_mode(std::string_view s);
OutputFormat parse_format(std::string_view s);
CollisionPolicy parse_collision_policy(std::string_view s);
AckTiming parse_fidelity(std::string_view s);
ApDiscipline parse_ap_discipline(std::string_view s);

/// Everything about a run except which scenario(s) it covers.
struct RunSettings {
  Mode mode = Mode::Both;
  int replications = 30;
  double horizon_s = 20.0;
  double warmup_s = 2.0;
  std::uint64_t seed = 1;
  CollisionPolicy collision_policy = CollisionPolicy::Mixture;
  AckTiming fidelity = AckTiming::PaperFidelity;
  ApDiscipline ap_discipline = ApDiscipline::WindowMix;
  int n_max = 40;
  OutputFormat format = OutputFormat::Markdown;
  double tolerance_pct = 2.0;

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;

  ModelOptions model_options() const;
  SimConfig sim_config(std::uint64_t seed_offset = 0) const;

  bool operator==(const RunSettings&) const = default;
};

struct RunConfig {
  std::string name = "scenario";
  Standard profile = Standard::B11;
  std::vector<int> download_windows;
  std::vector<int> upload_windows;
  RunSettings settings;

  Scenario scenario() const { return Scenario::from_windows(download_windows, upload_windows); }

  bool operator==(const RunConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Reads the `key = value` format written by render_config. `#` starts a
/// comment; window lists are comma separated. Unknown or repeated keys, a
/// missing profile, an empty scenario and non-positive windows are errors.
RunConfig parse_config(std::string_view text);

std::string render_config(const RunConfig& config);

}  // namespace aptcp

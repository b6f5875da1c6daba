// aptcp: analytic and simulated AP throughput for TCP uploads/downloads over 802.11.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "aptcp/presets.hpp"
#include "aptcp/run_config.hpp"
#include "aptcp/saturation.hpp"
#include "aptcp/tables.hpp"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view extension(aptcp::OutputFormat f) {
  switch (f) {
    case aptcp::OutputFormat::Csv: return ".csv";
    case aptcp::OutputFormat::Json: return ".json";
    case aptcp::OutputFormat::Markdown: return ".md";
  }
  return ".txt";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AP throughput for long TCP uploads and downloads in an 802.11 WLAN"};
  app.set_version_flag("--version", std::string(APTCP_VERSION));

  std::string config_path, preset, mode, policy, fidelity, format, ap_queue, beta_dump, rep_log;
  int replications = 0;
  double horizon = 0.0, warmup = 0.0, tolerance = 0.0;
  std::uint64_t seed = 0;
  int n_max = 0;

  auto* o_config = app.add_option("--config", config_path, "Scenario config file")->check(CLI::ExistingFile);
  auto* o_preset = app.add_option("--preset", preset, "Built-in table")
                       ->check(CLI::IsMember({"table1", "table2", "table3"}));
  o_config->excludes(o_preset);
  auto* o_mode = app.add_option("--mode", mode, "analyze | simulate | both")
                     ->check(CLI::IsMember({"analyze", "simulate", "both"}));
  auto* o_reps = app.add_option("--replications", replications, "Simulation replications")
                     ->check(CLI::PositiveNumber);
  auto* o_horizon = app.add_option("--horizon", horizon, "Virtual seconds per replication")
                        ->check(CLI::PositiveNumber);
  auto* o_warmup = app.add_option("--warmup", warmup, "Discarded virtual seconds at start")
                       ->check(CLI::NonNegativeNumber);
  auto* o_seed = app.add_option("--seed", seed, "Base seed");
  auto* o_policy = app.add_option("--collision-policy", policy, "paper | mixture")
                       ->check(CLI::IsMember({"paper", "mixture"}));
  auto* o_fid = app.add_option("--fidelity", fidelity, "paper | standards")
                    ->check(CLI::IsMember({"paper", "standards"}));
  auto* o_queue = app.add_option("--ap-queue", ap_queue, "mix | fifo")
                      ->check(CLI::IsMember({"mix", "fifo"}));
  auto* o_nmax = app.add_option("--n-max", n_max, "Truncation of the state space");
  auto* o_format = app.add_option("--format", format, "csv | json | markdown")
                       ->check(CLI::IsMember({"csv", "json", "markdown"}));
  auto* o_tol = app.add_option("--tolerance", tolerance, "Allowed analysis/simulation gap [%]")
                    ->check(CLI::NonNegativeNumber);
  app.add_option("--beta-dump", beta_dump, "Write the attempt-probability table as CSV");
  app.add_option("--replication-log", rep_log, "Write per-replication JSON lines");

  CLI11_PARSE(app, argc, argv);

  if (config_path.empty() && preset.empty()) {
    std::cerr << "error: one of --config or --preset is required\n" << app.help();
    return kExitUsage;
  }

  try {
    std::optional<aptcp::RunConfig> config;
    aptcp::RunSettings settings;
    if (!config_path.empty()) {
      config = aptcp::parse_config(read_file(config_path));
      settings = config->settings;
    }

    // Command-line flags override the config file.
    if (o_mode->count()) settings.mode = aptcp::parse_mode(mode);
    if (o_reps->count()) settings.replications = replications;
    if (o_horizon->count()) settings.horizon_s = horizon;
    if (o_warmup->count()) settings.warmup_s = warmup;
    if (o_seed->count()) settings.seed = seed;
    if (o_policy->count()) settings.collision_policy = aptcp::parse_collision_policy(policy);
    if (o_fid->count()) settings.fidelity = aptcp::parse_fidelity(fidelity);
    if (o_queue->count()) settings.ap_discipline = aptcp::parse_ap_discipline(ap_queue);
    if (o_nmax->count()) settings.n_max = n_max;
    if (o_format->count()) settings.format = aptcp::parse_format(format);
    if (o_tol->count()) settings.tolerance_pct = tolerance;
    settings.validate();

    std::ofstream log_file;
    if (!rep_log.empty()) {
      log_file.open(rep_log);
      if (!log_file) throw std::runtime_error("cannot write " + rep_log);
    }
    std::ostream* log = rep_log.empty() ? nullptr : &log_file;

    aptcp::TableDocument doc;
    aptcp::Standard beta_profile;
    std::string stem;
    if (config) {
      config->settings = settings;
      doc = aptcp::run_tables(*config, log);
      beta_profile = config->profile;
      stem = config->name;
    } else {
      const auto& p = aptcp::table_preset(preset);
      doc = aptcp::run_tables(p, settings, log);
      beta_profile = p.rows.front().profile;
      stem = p.name;
    }

    if (!beta_dump.empty()) {
      std::ofstream out(beta_dump);
      if (!out) throw std::runtime_error("cannot write " + beta_dump);
      aptcp::build_table(settings.n_max + 1, aptcp::builtin_profile(beta_profile)).write_csv(out);
    }

    const std::string text = aptcp::render(doc, settings.format);
    if (const char* dir = std::getenv("APTCP_OUTPUT_DIR"); dir && *dir) {
      std::filesystem::create_directories(dir);
      const auto path = std::filesystem::path(dir) / (stem + std::string(extension(settings.format)));
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      out << text;
      std::cerr << "wrote " << path.string() << '\n';
    } else {
      std::cout << text;
    }
    return doc.ok() ? 0 : kExitMismatch;
  } catch (const aptcp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

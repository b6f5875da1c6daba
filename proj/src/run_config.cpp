#include "aptcp/run_config.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace aptcp {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view s, std::string_view what) {
  s = trim(s);
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty())
    throw std::invalid_argument(std::string(what) + ": not a number: '" + std::string(s) + "'");
  return value;
}

std::vector<int> parse_windows(std::string_view s) {
  std::vector<int> out;
  s = trim(s);
  if (s.empty()) return out;
  while (true) {
    const auto comma = s.find(',');
    const int w = parse_number<int>(s.substr(0, comma), "window");
    if (w < 1) throw std::invalid_argument("window must be at least one packet, got " + std::to_string(w));
    out.push_back(w);
    if (comma == std::string_view::npos) break;
    s = s.substr(comma + 1);
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

std::string shortest(double v) {
  // Shortest text that reads back to the same double.
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

[[noreturn]] void bad_choice(std::string_view what, std::string_view got, std::string_view accepted) {
  throw std::invalid_argument(std::string(what) + ": '" + std::string(got) + "' (expected " +
                              std::string(accepted) + ")");
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Analyze: return "analyze";
    case Mode::Simulate: return "simulate";
    case Mode::Both: return "both";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Markdown: return "markdown";
  }
  return "?";
}

std::string_view to_string(ApDiscipline discipline) {
  return discipline == ApDiscipline::Fifo ? "fifo" : "mix";
}

Mode parse_mode(std::string_view s) {
  if (s == "analyze") return Mode::Analyze;
  if (s == "simulate") return Mode::Simulate;
  if (s == "both") return Mode::Both;
  bad_choice("mode", s, "analyze, simulate or both");
}

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  if (s == "markdown") return OutputFormat::Markdown;
  bad_choice("format", s, "csv, json or markdown");
}

CollisionPolicy parse_collision_policy(std::string_view s) {
  if (s == "paper") return CollisionPolicy::PaperSimple;
  if (s == "mixture") return CollisionPolicy::Mixture;
  bad_choice("collision policy", s, "paper or mixture");
}

AckTiming parse_fidelity(std::string_view s) {
  if (s == "paper") return AckTiming::PaperFidelity;
  if (s == "standards") return AckTiming::StandardsMode;
  bad_choice("fidelity", s, "paper or standards");
}

ApDiscipline parse_ap_discipline(std::string_view s) {
  if (s == "mix") return ApDiscipline::WindowMix;
  if (s == "fifo") return ApDiscipline::Fifo;
  bad_choice("AP queue", s, "mix or fifo");
}

void RunSettings::validate() const {
  if (mode != Mode::Analyze && replications < 1)
    throw std::invalid_argument("replications must be >= 1 when simulating");
  if (n_max < 10) throw std::invalid_argument("n_max must be >= 10");
  if (!(horizon_s > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!(warmup_s >= 0.0 && warmup_s < horizon_s))
    throw std::invalid_argument("warmup must lie in [0, horizon)");
  if (!(tolerance_pct >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");
}

ModelOptions RunSettings::model_options() const {
  return {.n_max = n_max, .policy = collision_policy, .fidelity = fidelity};
}

SimConfig RunSettings::sim_config(std::uint64_t seed_offset) const {
  return {.horizon_s = horizon_s,
          .warmup_s = warmup_s,
          .seed = seed + seed_offset,
          .ap_discipline = ap_discipline,
          .fidelity = fidelity};
}

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  bool have_profile = false;
  int line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (!seen.insert(std::string(key)).second)
      throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");

    try {
      auto& s = cfg.settings;
      if (key == "name") {
        cfg.name = std::string(value);
      } else if (key == "profile") {
        const auto standard = parse_profile_name(value);
        if (!standard) throw std::invalid_argument("unknown profile '" + std::string(value) + "'");
        cfg.profile = *standard;
        have_profile = true;
      } else if (key == "downloads") {
        cfg.download_windows = parse_windows(value);
      } else if (key == "uploads") {
        cfg.upload_windows = parse_windows(value);
      } else if (key == "mode") {
        s.mode = parse_mode(value);
      } else if (key == "replications") {
        s.replications = parse_number<int>(value, "replications");
      } else if (key == "horizon") {
        s.horizon_s = parse_number<double>(value, "horizon");
      } else if (key == "warmup") {
        s.warmup_s = parse_number<double>(value, "warmup");
      } else if (key == "seed") {
        s.seed = parse_number<std::uint64_t>(value, "seed");
      } else if (key == "collision_policy") {
        s.collision_policy = parse_collision_policy(value);
      } else if (key == "fidelity") {
        s.fidelity = parse_fidelity(value);
      } else if (key == "ap_queue") {
        s.ap_discipline = parse_ap_discipline(value);
      } else if (key == "n_max") {
        s.n_max = parse_number<int>(value, "n_max");
      } else if (key == "format") {
        s.format = parse_format(value);
      } else if (key == "tolerance") {
        s.tolerance_pct = parse_number<double>(value, "tolerance");
      } else {
        throw std::invalid_argument("unknown key '" + std::string(key) + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line_no, e.what());
    }
  }

  if (!have_profile) throw ConfigError(0, "missing 'profile'");
  if (cfg.download_windows.empty() && cfg.upload_windows.empty())
    throw ConfigError(0, "scenario has no connections (set 'downloads' and/or 'uploads')");
  try {
    cfg.settings.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  return cfg;
}

std::string render_config(const RunConfig& cfg) {
  const auto& s = cfg.settings;
  std::ostringstream os;
  os << "name = " << cfg.name << '\n'
     << "profile = " << profile_name(cfg.profile) << '\n'
     << "downloads = " << join(cfg.download_windows) << '\n'
     << "uploads = " << join(cfg.upload_windows) << '\n'
     << "mode = " << to_string(s.mode) << '\n'
     << "replications = " << s.replications << '\n'
     << "horizon = " << shortest(s.horizon_s) << '\n'
     << "warmup = " << shortest(s.warmup_s) << '\n'
     << "seed = " << s.seed << '\n'
     << "collision_policy = " << to_string(s.collision_policy) << '\n'
     << "fidelity = " << to_string(s.fidelity) << '\n'
     << "ap_queue = " << to_string(s.ap_discipline) << '\n'
     << "n_max = " << s.n_max << '\n'
     << "format = " << to_string(s.format) << '\n'
     << "tolerance = " << shortest(s.tolerance_pct) << '\n';
  return os.str();
}

}  // namespace aptcp

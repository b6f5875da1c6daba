#include "aptcp/tables.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace aptcp {

namespace {

constexpr double kMega = 1e6;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string opt_fixed(const std::optional<double>& v, int digits, std::string_view absent) {
  return v ? fixed(*v, digits) : std::string(absent);
}

std::string windows_text(const std::vector<int>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i]);
  }
  return out;
}

std::optional<double> mbps(const std::optional<double>& bps) {
  if (!bps) return std::nullopt;
  return *bps / kMega;
}

struct RowView {
  std::optional<double> analysis, analysis_down, analysis_up;
  std::optional<double> sim, sim_ci, sim_down, sim_up;
  std::optional<double> sim_err_pct, ref, ref_err_pct, ref_down, ref_up;
  double p_download = 0.0;
  std::string status;
};

RowView view(const RowResult& r, double tolerance_pct) {
  RowView v;
  v.p_download = r.row.scenario().p_download();
  if (r.analysis) {
    v.analysis = r.analysis->phi_aggregate_bps / kMega;
    v.analysis_down = r.analysis->phi_download_bps / kMega;
    v.analysis_up = r.analysis->phi_upload_bps / kMega;
  }
  if (r.simulation) {
    v.sim_ci = r.simulation->aggregate_bps.half_width / kMega;
    v.sim_down = r.simulation->download_bps.mean / kMega;
    v.sim_up = r.simulation->upload_bps.mean / kMega;
  }
  v.sim = mbps(r.sim_mean_bps());
  if (auto e = r.sim_rel_error()) v.sim_err_pct = 100.0 * *e;
  v.ref = r.row.golden_mbps;
  if (auto e = r.golden_rel_error()) v.ref_err_pct = 100.0 * *e;
  v.ref_down = r.row.golden_download_mbps;
  v.ref_up = r.row.golden_upload_mbps;
  if (r.error)
    v.status = "error: " + *r.error;
  else if (v.sim_err_pct && *v.sim_err_pct > tolerance_pct)
    v.status = "out-of-tolerance";
  else
    v.status = "ok";
  return v;
}

std::string csv_cell(std::string s) {
  for (auto& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
  }
  return s;
}

std::string render_csv(const TableDocument& doc) {
  std::ostringstream os;
  os << csv_header() << '\n';
  const std::string table = csv_cell(doc.source);
  for (const auto& r : doc.rows) {
    const auto v = view(r, doc.settings.tolerance_pct);
    os << table << ',' << csv_cell(r.row.label) << ',' << profile_name(r.row.profile) << ','
       << windows_text(r.row.download_windows) << ',' << windows_text(r.row.upload_windows) << ','
       << fixed(v.p_download, 6) << ',' << opt_fixed(v.analysis, 4, "") << ','
       << opt_fixed(v.analysis_down, 4, "") << ',' << opt_fixed(v.analysis_up, 4, "") << ','
       << opt_fixed(v.sim, 4, "") << ',' << opt_fixed(v.sim_ci, 4, "") << ','
       << opt_fixed(v.sim_down, 4, "") << ',' << opt_fixed(v.sim_up, 4, "") << ','
       << opt_fixed(v.sim_err_pct, 3, "") << ',' << opt_fixed(v.ref, 3, "") << ','
       << opt_fixed(v.ref_err_pct, 3, "") << ',' << opt_fixed(v.ref_down, 3, "") << ','
       << opt_fixed(v.ref_up, 3, "") << ',' << csv_cell(v.status) << '\n';
  }
  return os.str();
}

std::string render_markdown(const TableDocument& doc) {
  const auto& s = doc.settings;
  std::ostringstream os;
  os << "## " << doc.title << "\n\n";
  os << "Source: " << doc.source << "; mode " << to_string(s.mode) << ", collision policy "
     << to_string(s.collision_policy) << ", ACK timing " << to_string(s.fidelity);
  if (s.mode != Mode::Analyze) {
    os << ", " << s.replications << " x " << fixed(s.horizon_s, 1) << " s (warm-up "
       << fixed(s.warmup_s, 1) << " s), seed " << s.seed << ", AP queue "
       << to_string(s.ap_discipline);
  }
  os << ", tolerance " << fixed(s.tolerance_pct, 2) << " %\n\n";
  os << "| Row | Profile | W_d / W_u | Analysis [Mbps] | Simulation [Mbps] | Error [%] "
        "| Down ana / sim | Up ana / sim | Reference [Mbps] | Ref. error [%] "
        "| Ref. down / up | Status |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : doc.rows) {
    const auto v = view(r, s.tolerance_pct);
    const auto scen_w = [&](const std::vector<int>& w) {
      long sum = 0;
      for (int x : w) sum += x;
      return std::to_string(sum);
    };
    std::string sim = "-";
    if (v.sim) {
      sim = fixed(*v.sim, 4);
      if (v.sim_ci) sim += " +/- " + fixed(*v.sim_ci, 4);
    }
    std::string ref_split = "-";
    if (v.ref_down && v.ref_up) ref_split = fixed(*v.ref_down, 3) + " / " + fixed(*v.ref_up, 3);
    os << "| " << r.row.label << " | " << profile_name(r.row.profile) << " | "
       << scen_w(r.row.download_windows) << " / " << scen_w(r.row.upload_windows) << " | "
       << opt_fixed(v.analysis, 4, "-") << " | " << sim << " | " << opt_fixed(v.sim_err_pct, 3, "-")
       << " | " << opt_fixed(v.analysis_down, 3, "-") << " / " << opt_fixed(v.sim_down, 3, "-")
       << " | " << opt_fixed(v.analysis_up, 3, "-") << " / " << opt_fixed(v.sim_up, 3, "-")
       << " | " << opt_fixed(v.ref, 3, "-") << " | " << opt_fixed(v.ref_err_pct, 3, "-") << " | "
       << ref_split << " | " << v.status << " |\n";
  }
  os << "\nResult: " << (doc.ok() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string render_json(const TableDocument& doc) {
  const auto& s = doc.settings;
  nlohmann::ordered_json j;
  j["version"] = APTCP_VERSION;
  j["title"] = doc.title;
  j["source"] = doc.source;
  j["mode"] = to_string(s.mode);
  j["seed"] = s.seed;
  j["replications"] = s.replications;
  j["horizon_s"] = s.horizon_s;
  j["warmup_s"] = s.warmup_s;
  j["collision_policy"] = to_string(s.collision_policy);
  j["fidelity"] = to_string(s.fidelity);
  j["ap_queue"] = to_string(s.ap_discipline);
  j["n_max"] = s.n_max;
  j["tolerance_pct"] = s.tolerance_pct;
  j["ok"] = doc.ok();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : doc.rows) {
    const auto v = view(r, s.tolerance_pct);
    nlohmann::ordered_json o;
    o["row"] = r.row.label;
    o["profile"] = profile_name(r.row.profile);
    o["download_windows"] = r.row.download_windows;
    o["upload_windows"] = r.row.upload_windows;
    o["p_download"] = v.p_download;
    o["analysis_mbps"] = opt_json(v.analysis);
    o["analysis_download_mbps"] = opt_json(v.analysis_down);
    o["analysis_upload_mbps"] = opt_json(v.analysis_up);
    o["sim_mbps"] = opt_json(v.sim);
    o["sim_ci95_mbps"] = opt_json(v.sim_ci);
    o["sim_download_mbps"] = opt_json(v.sim_down);
    o["sim_upload_mbps"] = opt_json(v.sim_up);
    o["sim_rel_error_pct"] = opt_json(v.sim_err_pct);
    o["reference_mbps"] = opt_json(v.ref);
    o["reference_error_pct"] = opt_json(v.ref_err_pct);
    o["reference_download_mbps"] = opt_json(v.ref_down);
    o["reference_upload_mbps"] = opt_json(v.ref_up);
    o["empty_target_fraction"] =
        r.simulation ? nlohmann::ordered_json(r.simulation->empty_target_fraction) : nullptr;
    o["status"] = v.status;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace

std::optional<double> RowResult::sim_mean_bps() const {
  if (simulation) return simulation->aggregate_bps.mean;
  return sim_single_bps;
}

std::optional<double> RowResult::sim_rel_error() const {
  const auto sim = sim_mean_bps();
  if (!analysis || !sim) return std::nullopt;
  return std::abs(analysis->phi_aggregate_bps - *sim) / analysis->phi_aggregate_bps;
}

std::optional<double> RowResult::golden_rel_error() const {
  if (!analysis || !row.golden_mbps) return std::nullopt;
  return (analysis->phi_aggregate_bps / kMega - *row.golden_mbps) / *row.golden_mbps;
}

bool TableDocument::ok() const {
  for (const auto& r : rows) {
    if (r.error) return false;
    if (auto e = r.sim_rel_error(); e && 100.0 * *e > settings.tolerance_pct) return false;
  }
  return true;
}

TableDocument run_rows(std::string title, std::string source, const std::vector<TableRow>& rows,
                       const RunSettings& settings, std::ostream* replication_log) {
  settings.validate();
  TableDocument doc{std::move(title), std::move(source), settings, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RowResult result{rows[i], std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    try {
      const auto scenario = rows[i].scenario();
      const auto profile = builtin_profile(rows[i].profile);
      if (settings.mode != Mode::Simulate)
        result.analysis = throughput(scenario, profile, settings.model_options());
      if (settings.mode != Mode::Analyze) {
        const auto reps = run_replications(scenario, profile,
                                           settings.sim_config(static_cast<std::uint64_t>(i) << 32),
                                           settings.replications);
        if (replication_log) {
          for (const auto& s : reps) *replication_log << to_json_line(s) << '\n';
        }
        if (reps.size() >= 2)
          result.simulation = estimate(reps);
        else
          result.sim_single_bps = reps.front().aggregate_bps();
      }
    } catch (const std::exception& e) {
      result.error = e.what();
    }
    doc.rows.push_back(std::move(result));
  }
  return doc;
}

TableDocument run_tables(const TablePreset& preset, const RunSettings& settings,
                         std::ostream* replication_log) {
  return run_rows(preset.title, "preset:" + preset.name, preset.rows, settings, replication_log);
}

TableDocument run_tables(const RunConfig& config, std::ostream* replication_log) {
  TableRow row;
  row.label = config.name;
  row.profile = config.profile;
  row.download_windows = config.download_windows;
  row.upload_windows = config.upload_windows;
  return run_rows("Aggregate AP throughput", "config:" + config.name, {row}, config.settings,
                  replication_log);
}

std::string render(const TableDocument& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return render_csv(doc);
    case OutputFormat::Json: return render_json(doc);
    case OutputFormat::Markdown: return render_markdown(doc);
  }
  return {};
}

std::string_view csv_header() {
  return "table,row,profile,download_windows,upload_windows,p_download,analysis_mbps,"
         "analysis_download_mbps,analysis_upload_mbps,sim_mbps,sim_ci95_mbps,sim_download_mbps,"
         "sim_upload_mbps,sim_rel_error_pct,reference_mbps,reference_error_pct,"
         "reference_download_mbps,reference_upload_mbps,status";
}

}  // namespace aptcp

#include "slabflow/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace slabflow {

using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json parts(const EnergyParts& p) {
  return {{"velocity", p.velocity}, {"pressure", p.pressure}, {"boundary", p.boundary}, {"total", p.total()}};
}

}  // namespace

json provenance(const std::string& config_hash, const std::string& command) {
  return {{"artifact", kArtifactName}, {"version", kArtifactVersion}, {"config_hash", config_hash},
          {"command", command}};
}

json to_json(const IdentityReport& r) {
  return {{"residuals", r.residuals}, {"info", r.info}, {"max_residual", r.max_residual()}};
}

json to_json(const CompatibilityReport& r) {
  return {{"l2", r.l2}, {"sup", r.sup}};
}

json to_json(const EnergyReport& r) {
  json j;
  j["t"] = r.t;
  for (int i = 0; i < 4; ++i) j["E"].push_back(parts(r.E[i]));
  for (int i = 0; i < 3; ++i) j["W"].push_back(parts(r.W[i]));
  for (int i = 0; i < 3; ++i) j["W4"].push_back(parts(r.W4[i]));
  j["E_total"] = r.E_total;
  j["N_total"] = r.N_total;
  j["N_components"] = json::object();
  for (const auto& [k, v] : r.N_components) j["N_components"][k] = v;
  j["N_extended"] = json::object();
  for (const auto& [k, v] : r.N_extended) j["N_extended"][k] = v;
  return j;
}

json to_json(const ResidualReport& r) {
  json j = {{"wave", r.wave},
            {"weighted_wave", r.weighted_wave},
            {"wave_relative", r.wave_relative},
            {"weighted_wave_relative", r.weighted_wave_relative},
            {"continuity", r.continuity},
            {"divergence_expression", r.divergence_expression}};
  j["cauchy"] = r.cauchy >= 0.0 ? json(r.cauchy) : json(nullptr);
  return j;
}

json to_json(const RunResult& r) {
  json j = {{"completed", r.completed}, {"steps", r.steps}, {"last_valid_t", r.last_valid_t},
            {"snapshots", r.snapshots.size()}};
  j["failure"] = r.failure.empty() ? json(nullptr) : json(r.failure);
  double sup_N = 0.0, sup_div = 0.0;
  for (const StepRecord& s : r.records) {
    sup_N = std::max(sup_N, s.N);
    sup_div = std::max(sup_div, s.div_max);
  }
  j["sup_N"] = sup_N;
  j["sup_div"] = sup_div;
  return j;
}

json to_json(const SweepReport& r) {
  json j;
  j["method"] =
      "Cauchy-in-kappa proxy: distances between runs at consecutive kappa on a shared grid and shared snapshot "
      "times; no incompressible reference solver is used";
  j["partial"] = r.partial;
  j["dt"] = r.dt;
  for (const SweepRun& s : r.runs) {
    json row = {{"kappa", s.kappa}, {"completed", s.completed}, {"steps", s.steps}, {"sup_N", s.sup_N},
                {"sup_div", s.sup_div}, {"sup_R_minus_beta", s.sup_R_minus_beta},
                {"final_residuals", to_json(s.final_residuals)}, {"compatibility", to_json(s.compatibility)}};
    row["failure"] = s.failure.empty() ? json(nullptr) : json(s.failure);
    j["runs"].push_back(row);
  }
  j["pairs"] = json::array();
  for (const PairDistance& p : r.pairs)
    j["pairs"].push_back({{"kappa_a", p.kappa_a}, {"kappa_b", p.kappa_b}, {"c0", p.c0}, {"c2", p.c2}});
  j["fits"] = {{"div_vs_kappa", {{"slope", r.div_fit.slope}, {"fit_residual", r.div_fit.residual}}},
               {"R_minus_beta_vs_kappa", {{"slope", r.R_fit.slope}, {"fit_residual", r.R_fit.residual}}}};
  j["N_ratio"] = r.N_ratio;
  return j;
}

json to_json(const std::vector<UniformityRow>& rows) {
  json j = json::array();
  for (const UniformityRow& u : rows)
    j.push_back({{"kappa", u.kappa}, {"v0_h4", u.v0_h4}, {"v0_h4_boundary", u.v0_h4_boundary}, {"q0_h4", u.q0_h4},
                 {"q0_h4_boundary", u.q0_h4_boundary}, {"v0_minus_u0_c2", u.v0_minus_u0_c2},
                 {"div_v0_c1", u.div_v0_c1}, {"compat_l2", u.compat_l2}});
  return j;
}

std::string run_csv(const RunResult& r) {
  std::ostringstream os;
  os << kRunCsvHeader << "\n";
  for (const StepRecord& s : r.records)
    os << s.step << "," << num(s.t) << "," << num(s.dt) << "," << num(s.div_max) << "," << num(s.R_minus_beta)
       << "," << (s.N >= 0.0 ? num(s.N) : "") << "," << (s.E >= 0.0 ? num(s.E) : "") << "\n";
  return os.str();
}

std::string sweep_runs_csv(const SweepReport& r) {
  std::ostringstream os;
  os << kSweepRunsCsvHeader << "\n";
  for (const SweepRun& s : r.runs) {
    os << num(s.kappa) << "," << (s.completed ? 1 : 0) << "," << s.steps << "," << num(s.sup_N) << ","
       << num(s.sup_div) << "," << num(s.sup_R_minus_beta);
    for (double w : s.final_residuals.wave) os << "," << num(w);
    for (double w : s.final_residuals.weighted_wave) os << "," << num(w);
    os << "," << num(s.final_residuals.continuity) << "," << num(s.final_residuals.divergence_expression);
    for (double c : s.compatibility.l2) os << "," << num(c);
    os << "\n";
  }
  return os.str();
}

std::string sweep_pairs_csv(const SweepReport& r) {
  std::ostringstream os;
  os << kSweepPairsCsvHeader << "\n";
  for (const PairDistance& p : r.pairs)
    os << num(p.kappa_a) << "," << num(p.kappa_b) << "," << num(p.c0) << "," << num(p.c2) << "\n";
  return os.str();
}

std::string uniformity_csv(const std::vector<UniformityRow>& rows) {
  std::ostringstream os;
  os << kUniformityCsvHeader << "\n";
  for (const UniformityRow& u : rows) {
    os << num(u.kappa) << "," << num(u.v0_h4) << "," << num(u.v0_h4_boundary) << "," << num(u.q0_h4) << ","
       << num(u.q0_h4_boundary) << "," << num(u.v0_minus_u0_c2) << "," << num(u.div_v0_c1);
    for (double c : u.compat_l2) os << "," << num(c);
    os << "\n";
  }
  return os.str();
}

std::string svg_line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                          const std::vector<PlotSeries>& series, bool log_x, bool log_y) {
  constexpr double W = 640, H = 420, L = 80, R = 20, T = 40, B = 60;
  auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!log_x || x > 0.0) && (!log_y || y > 0.0);
  };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const PlotSeries& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (usable(s.x[i], s.y[i])) {
        x0 = std::min(x0, tx(s.x[i]));
        x1 = std::max(x1, tx(s.x[i]));
        y0 = std::min(y0, ty(s.y[i]));
        y1 = std::max(y1, ty(s.y[i]));
      }
  if (!(x0 <= x1)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  auto label = [](double v, bool lg) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", lg ? std::pow(10.0, v) : v);
    return std::string(buf);
  };
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    const double sx = L + (W - L - R) * i / 4.0, sy = H - B - (H - T - B) * i / 4.0;
    os << "<text x=\"" << sx << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << label(fx, log_x) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
       << label(fy, log_y) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << xlabel << "</text>\n";
  os << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
     << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* c = colors[k % 6];
    os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (usable(s.x[i], s.y[i])) os << px(s.x[i]) << "," << py(s.y[i]) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 16 * (k + 1) << "\" font-size=\"12\" fill=\"" << c << "\">"
       << s.name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  out << content;
  if (!out) throw SlabError("failed writing " + path);
}

void write_json(const std::string& path, json report, const json& prov) {
  report["provenance"] = prov;
  write_text(path, report.dump(2) + "\n");
}

}  // namespace slabflow

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "slabflow/checkpoint.hpp"
#include "slabflow/config.hpp"
#include "slabflow/harness.hpp"
#include "slabflow/report.hpp"

using namespace slabflow;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2;
constexpr double kIdentityTolerance = 1e-8;
constexpr double kCompatibilityTolerance = 1e-9;
constexpr double kWaveTolerance = 1e-6;

struct Options {
  std::string config, out, kappas, state;
  double kappa = -1.0, sigma = -1.0;
  int samples = 20;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError("sweep.kappas", "cannot parse '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Config effective_config(const Options& o) {
  Config c = o.config.empty() ? Config{} : load_config(o.config);
  if (o.kappa > 0.0) c.eos.kappa = o.kappa;
  if (o.sigma >= 0.0) c.sigma = o.sigma;
  if (!o.out.empty()) c.output.dir = o.out;
  if (!o.kappas.empty()) c.sweep.kappas = parse_list(o.kappas);
  c.validate();
  return c;
}

GridPtr make_grid(const Config& c) { return Grid::create(c.grid.n1, c.grid.n2, c.grid.n3); }

WellPreparedData make_data(const Config& c) {
  const GridPtr g = make_grid(c);
  return construct(c.eos_params(), divergence_free_seed(g, c.data.profile, c.data.amplitude, c.data.seed));
}

std::string path(const Config& c, const std::string& name) { return (fs::path(c.output.dir) / name).string(); }

int verify_geometry(const Config& c, const nlohmann::json& prov, int samples) {
  const GridPtr g = make_grid(c);
  IdentityOptions opt;
  opt.sigma = c.sigma;
  nlohmann::json rep;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const std::uint64_t seed = c.data.seed + static_cast<std::uint64_t>(i);
    const IdentityReport r =
        verify_identities(random_flow_map(g, 2, 0.05, seed), random_band_limited(g, 2, 0.05, seed + 1000), opt);
    worst = std::max(worst, r.max_residual());
    rep["samples"].push_back(to_json(r));
  }
  rep["max_residual"] = worst;
  rep["tolerance"] = kIdentityTolerance;
  rep["pass"] = worst < kIdentityTolerance;
  write_json(path(c, "identity_report.json"), rep, prov);
  std::printf("verify-geometry: %d samples, max residual %.3e (tolerance %.0e) -> %s\n", samples, worst,
              kIdentityTolerance, worst < kIdentityTolerance ? "PASS" : "FAIL");
  return worst < kIdentityTolerance ? kOk : kCheckFailed;
}

int make_data_cmd(const Config& c, const nlohmann::json& prov) {
  const WellPreparedData d = make_data(c);
  save_checkpoint(d, path(c, "data"));
  const CompatibilityReport r = compatibility_residuals(d);
  nlohmann::json rep = to_json(r);
  const bool ok = r.l2[0] < kCompatibilityTolerance && r.l2[1] < kCompatibilityTolerance;
  rep["kappa"] = c.eos.kappa;
  rep["pass"] = ok;
  write_json(path(c, "compatibility.json"), rep, prov);
  std::printf("make-data: kappa %g, compatibility r0..r3 = %.2e %.2e %.2e %.2e -> %s\n", c.eos.kappa, r.l2[0],
              r.l2[1], r.l2[2], r.l2[3], ok ? "PASS" : "FAIL");
  std::printf("  checkpoint written to %s\n", path(c, "data").c_str());
  return ok ? kOk : kCheckFailed;
}

FlowState load_or_build(const Config& c, const std::string& state_dir, EosParams& p) {
  if (!state_dir.empty()) {
    LoadedState ls = load_state_checkpoint(state_dir);
    p = ls.params;
    return ls.state;
  }
  p = c.eos_params();
  return initial_state(make_data(c));
}

int simulate(const Config& c, const nlohmann::json& prov) {
  const EosParams p = c.eos_params();
  RunOptions ro;
  ro.t_final = c.time.t_final;
  ro.stepper = c.stepper();
  ro.snapshot_every = c.output.snapshot_every;
  const RunResult r = run_simulation(initial_state(make_data(c)), p, ro);

  write_text(path(c, "energy.csv"), run_csv(r));
  for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%04zu", i);
    save_checkpoint(r.snapshots[i], p, (fs::path(c.output.dir) / "snapshots" / name).string());
  }
  nlohmann::json rep = to_json(r);
  rep["energies"] = nlohmann::json::array();
  for (const EnergyReport& e : r.energies) rep["energies"].push_back(to_json(e));
  if (r.snapshots.size() >= 3) rep["cauchy_invariance"] = cauchy_invariance_residual(r.snapshots, p);
  write_json(path(c, "run.json"), rep, prov);
  PlotSeries s{"kappa=" + std::to_string(c.eos.kappa), {}, {}};
  for (const StepRecord& rec : r.records)
    if (rec.N >= 0.0) {
      s.x.push_back(rec.t);
      s.y.push_back(rec.N);
    }
  write_text(path(c, "N_t.svg"), svg_line_plot("N(t)", "t", "N", {s}, false, true));
  std::printf("simulate: %s after %d steps, t = %.6g, %zu snapshots\n", r.completed ? "completed" : "FAILED",
              r.steps, r.last_valid_t, r.snapshots.size());
  if (!r.completed) std::printf("  %s\n", r.failure.c_str());
  return r.completed ? kOk : kCheckFailed;
}

int energy_cmd(const Config& c, const nlohmann::json& prov, const std::string& state_dir) {
  EosParams p;
  const FlowState s = load_or_build(c, state_dir, p);
  const EnergyReport e = energy_report(s, p);
  write_json(path(c, "energy_report.json"), to_json(e), prov);
  const bool ok = std::isfinite(e.N_total) && e.min_component() >= 0.0;
  std::printf("energy-report: t = %g, E = %.6e, N = %.6e -> %s\n", e.t, e.E_total, e.N_total, ok ? "PASS" : "FAIL");
  return ok ? kOk : kCheckFailed;
}

int residuals_cmd(const Config& c, const nlohmann::json& prov, const std::string& state_dir) {
  EosParams p;
  const FlowState s = load_or_build(c, state_dir, p);
  const ResidualReport r = residual_report(s, p);
  double worst = 0.0;
  for (double x : r.wave_relative) worst = std::max(worst, x);
  for (double x : r.weighted_wave_relative) worst = std::max(worst, x);
  nlohmann::json rep = to_json(r);
  rep["tolerance_relative"] = kWaveTolerance;
  rep["pass"] = worst < kWaveTolerance;
  write_json(path(c, "residuals.json"), rep, prov);
  std::printf("residuals: wave (relative) %.2e %.2e %.2e, weighted %.2e %.2e %.2e -> %s\n", r.wave_relative[0],
              r.wave_relative[1], r.wave_relative[2], r.weighted_wave_relative[0], r.weighted_wave_relative[1],
              r.weighted_wave_relative[2], worst < kWaveTolerance ? "PASS" : "FAIL");
  return worst < kWaveTolerance ? kOk : kCheckFailed;
}

int sweep_cmd(const Config& c, const nlohmann::json& prov) {
  SweepConfig sc;
  sc.kappas = c.sweep.kappas;
  sc.n1 = c.grid.n1;
  sc.n2 = c.grid.n2;
  sc.n3 = c.grid.n3;
  sc.gamma = c.eos.gamma;
  sc.beta = c.eos.beta;
  sc.sigma = c.sigma;
  sc.profile = c.data.profile;
  sc.amplitude = c.data.amplitude;
  sc.seed = c.data.seed;
  sc.run.t_final = c.time.t_final;
  sc.run.stepper = c.stepper();
  sc.run.snapshot_every = c.output.snapshot_every;
  const SweepReport r = sweep_kappa(sc);

  write_json(path(c, "sweep.json"), to_json(r), prov);
  write_text(path(c, "sweep_runs.csv"), sweep_runs_csv(r));
  write_text(path(c, "sweep_pairs.csv"), sweep_pairs_csv(r));
  std::vector<PlotSeries> nt;
  PlotSeries div{"sup_t |div v|", {}, {}};
  for (const SweepRun& run : r.runs) {
    PlotSeries s{"kappa=" + std::to_string(run.kappa), {}, {}};
    for (const StepRecord& rec : run.records)
      if (rec.N >= 0.0) {
        s.x.push_back(rec.t);
        s.y.push_back(rec.N);
      }
    nt.push_back(s);
    div.x.push_back(run.kappa);
    div.y.push_back(run.sup_div);
  }
  write_text(path(c, "N_t.svg"), svg_line_plot("N(t) per kappa", "t", "N", nt, false, true));
  write_text(path(c, "div_vs_kappa.svg"), svg_line_plot("sup_t |div v| vs kappa", "kappa", "sup |div v|", {div}, true, true));

  std::printf("sweep-kappa (Cauchy-in-kappa proxy, no incompressible reference solver)\n");
  std::printf("  %-10s %-6s %-12s %-12s %-12s\n", "kappa", "steps", "sup N", "sup div", "sup |R-b|");
  for (const SweepRun& run : r.runs)
    std::printf("  %-10g %-6d %-12.4e %-12.4e %-12.4e%s\n", run.kappa, run.steps, run.sup_N, run.sup_div,
                run.sup_R_minus_beta, run.completed ? "" : "  FAILED");
  for (const PairDistance& pd : r.pairs)
    std::printf("  |v(%g) - v(%g)|: C0 %.4e  C2 %.4e\n", pd.kappa_a, pd.kappa_b, pd.c0, pd.c2);
  std::printf("  slopes: div %.3f (fit residual %.2e), R-beta %.3f (fit residual %.2e); N ratio %.3f\n",
              r.div_fit.slope, r.div_fit.residual, r.R_fit.slope, r.R_fit.residual, r.N_ratio);
  return r.partial ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slabflow: compressible free-surface Euler on a periodic slab"};
  app.require_subcommand(1, 1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--kappa", o.kappa, "override eos.kappa");
    sub->add_option("--sigma", o.sigma, "override sigma");
    sub->add_option("--out", o.out, "override output.dir");
    sub->add_option("--kappas", o.kappas, "override sweep.kappas (comma separated)");
  };
  CLI::App* geo = app.add_subcommand("verify-geometry", "check the geometric identities on random samples");
  common(geo);
  geo->add_option("--samples", o.samples, "number of random samples")->check(CLI::PositiveNumber);
  CLI::App* data = app.add_subcommand("make-data", "construct well-prepared initial data");
  CLI::App* sim = app.add_subcommand("simulate", "run one trajectory");
  CLI::App* en = app.add_subcommand("energy-report", "energy functionals of a state");
  CLI::App* res = app.add_subcommand("residuals", "wave-equation and continuity residuals of a state");
  CLI::App* sw = app.add_subcommand("sweep-kappa", "incompressible-limit sweep over kappa");
  for (CLI::App* s : {data, sim, en, res, sw}) common(s);
  for (CLI::App* s : {en, res}) s->add_option("--state", o.state, "FlowState checkpoint directory (default: constructed data)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  Config c;
  nlohmann::json prov;
  try {
    c = effective_config(o);
    prov = provenance(fnv1a_hex(c.to_json()), app.get_subcommands().front()->get_name());
  } catch (const SlabError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (geo->parsed()) return verify_geometry(c, prov, o.samples);
    if (data->parsed()) return make_data_cmd(c, prov);
    if (sim->parsed()) return simulate(c, prov);
    if (en->parsed()) return energy_cmd(c, prov, o.state);
    if (res->parsed()) return residuals_cmd(c, prov, o.state);
    if (sw->parsed()) return sweep_cmd(c, prov);
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return kUsage;
  } catch (const SlabError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

#include "slabflow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "slabflow/geometry.hpp"
#include "slabflow/norms.hpp"

namespace slabflow {

ScalarField eulerian_divergence(const FlowState& s) {
  const FlowMapGeometry fm = flow_map_geometry(s.eta);
  const MatrixField dv = vector_gradient(s.v);
  ScalarField div(s.grid);
  for (int mu = 0; mu < 3; ++mu)
    for (int al = 0; al < 3; ++al) div += fm.a[mu][al] * dv[al][mu];
  return div;
}

namespace {

StepRecord measure(const FlowState& s, const EosParams& p, int step, double dt) {
  StepRecord r;
  r.step = step;
  r.t = s.t;
  r.dt = dt;
  r.div_max = eulerian_divergence(s).max_abs();
  const double rest = std::pow(p.beta, 1.0 / p.gamma);
  ScalarField dR = density_from_state(s);
  dR += -rest;
  r.R_minus_beta = dR.max_abs();
  return r;
}

}  // namespace

RunResult run_simulation(const FlowState& initial, const EosParams& p, const RunOptions& opt) {
  p.validate();
  opt.stepper.validate();
  if (!(opt.t_final > 0.0)) throw SlabError("t_final must be positive");
  if (opt.snapshot_every <= 0) throw SlabError("snapshot_every must be positive");
  if (opt.fixed_dt < 0.0) throw SlabError("fixed_dt must be non-negative");

  RunResult out;
  FlowState s = initial;
  s.check_finite();

  auto snapshot = [&](StepRecord& rec) {
    if (opt.compute_energy) {
      EnergyReport e = energy_report(s, p);
      rec.N = e.N_total;
      rec.E = e.E_total;
      out.energies.push_back(std::move(e));
    }
    if (opt.keep_snapshots) out.snapshots.push_back(s);
  };

  try {
    StepRecord r0 = measure(s, p, 0, 0.0);
    snapshot(r0);
    out.records.push_back(r0);
  } catch (const SlabError& e) {
    out.failure = e.what();
    out.final_state = s;
    return out;
  }
  out.last_valid_t = s.t;

  const double t_end = initial.t + opt.t_final;
  const double tol = 1e-12 * std::max(1.0, std::abs(t_end));
  int n = 0;
  bool snapped = true;
  try {
    while (s.t < t_end - tol) {
      if (n >= opt.stepper.max_steps) break;
      double dt = opt.fixed_dt > 0.0 ? opt.fixed_dt : cfl_dt(s, p, opt.stepper);
      dt = std::min(dt, t_end - s.t);
      FlowState next = step(s, dt, p);
      StepRecord rec = measure(next, p, n + 1, dt);
      s = std::move(next);
      ++n;
      out.last_valid_t = s.t;
      snapped = n % opt.snapshot_every == 0;
      if (snapped) snapshot(rec);
      out.records.push_back(rec);
    }
    if (!snapped) {
      snapshot(out.records.back());
    }
    out.completed = true;
  } catch (const SlabError& e) {
    std::ostringstream os;
    os << e.what() << " (last valid t = " << out.last_valid_t << ")";
    out.failure = os.str();
  }
  out.steps = n;
  out.final_state = s;
  return out;
}

RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw SlabError("fit_rate: x and y differ in length");
  if (x.size() < 2) throw SlabError("fit_rate: need at least two points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw SlabError("fit_rate: inputs must be positive and finite");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw SlabError("fit_rate: x values must not all coincide");
  RateFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (f.intercept + f.slope * lx[i]);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

void SweepConfig::validate() const {
  if (kappas.size() < 2) throw SlabError("sweep needs at least two kappa values");
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    if (!(kappas[i] > 0.0)) throw SlabError("sweep kappas must be positive");
    if (i > 0 && !(kappas[i] > kappas[i - 1])) throw SlabError("sweep kappas must be distinct and ascending");
  }
  if (workers < 0) throw SlabError("workers must be non-negative");
}

int default_workers() {
  if (const char* env = std::getenv("SLABFLOW_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw SlabError("SLABFLOW_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

double distance(const VectorField& a, const VectorField& b, int k) {
  VectorField d;
  for (int c = 0; c < 3; ++c) d[c] = a[c] - b[c];
  return ck_norm(d, k);
}

}  // namespace

SweepReport sweep_kappa(const SweepConfig& cfg) {
  cfg.validate();
  const GridPtr grid = Grid::create(cfg.n1, cfg.n2, cfg.n3);
  const VectorField u0 = divergence_free_seed(grid, cfg.profile, cfg.amplitude, cfg.seed);
  const std::size_t nk = cfg.kappas.size();

  // Data construction is cheap relative to the runs; done up front so the
  // shared step can be taken from the most restrictive initial CFL.
  std::vector<EosParams> params(nk);
  std::vector<WellPreparedData> data;
  for (std::size_t i = 0; i < nk; ++i) {
    params[i] = EosParams::make(cfg.kappas[i], cfg.gamma, cfg.beta, cfg.sigma);
    data.push_back(construct(params[i], u0, cfg.construction));
  }
  SweepReport rep;
  rep.dt = cfg.run.fixed_dt;
  if (rep.dt <= 0.0) {
    rep.dt = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nk; ++i) rep.dt = std::min(rep.dt, cfl_dt(initial_state(data[i]), params[i], cfg.run.stepper));
  }
  RunOptions ro = cfg.run;
  ro.fixed_dt = rep.dt;
  ro.keep_snapshots = true;

  std::vector<RunResult> results(nk);
  std::vector<std::string> errors(nk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < nk; i = next++) {
      try {
        results[i] = run_simulation(initial_state(data[i]), params[i], ro);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int nw = std::min<int>(cfg.workers > 0 ? cfg.workers : default_workers(), static_cast<int>(nk));
  std::vector<std::thread> pool;
  for (int w = 1; w < nw; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < nk; ++i) {
    SweepRun run;
    run.kappa = cfg.kappas[i];
    run.compatibility = compatibility_residuals(data[i]);
    const RunResult& r = results[i];
    run.completed = errors[i].empty() && r.completed;
    run.failure = errors[i].empty() ? r.failure : errors[i];
    run.steps = r.steps;
    run.records = r.records;
    for (const StepRecord& rec : r.records) {
      run.sup_N = std::max(run.sup_N, rec.N);
      run.sup_div = std::max(run.sup_div, rec.div_max);
      run.sup_R_minus_beta = std::max(run.sup_R_minus_beta, rec.R_minus_beta);
    }
    if (run.completed) run.final_residuals = residual_report(r.final_state, params[i]);
    else rep.partial = true;
    rep.runs.push_back(std::move(run));
  }

  for (std::size_t i = 0; i + 1 < nk; ++i) {
    PairDistance pd;
    pd.kappa_a = cfg.kappas[i];
    pd.kappa_b = cfg.kappas[i + 1];
    const auto& sa = results[i].snapshots;
    const auto& sb = results[i + 1].snapshots;
    const std::size_t ns = std::min(sa.size(), sb.size());
    for (std::size_t j = 0; j < ns; ++j) {
      pd.c0 = std::max(pd.c0, distance(sa[j].v, sb[j].v, 0));
      pd.c2 = std::max(pd.c2, distance(sa[j].v, sb[j].v, 2));
    }
    rep.pairs.push_back(pd);
  }

  if (!rep.partial) {
    std::vector<double> div, rb;
    bool positive = true;
    for (const SweepRun& r : rep.runs) {
      div.push_back(r.sup_div);
      rb.push_back(r.sup_R_minus_beta);
      positive = positive && r.sup_div > 0.0 && r.sup_R_minus_beta > 0.0;
    }
    if (positive) {
      rep.div_fit = fit_rate(cfg.kappas, div);
      rep.R_fit = fit_rate(cfg.kappas, rb);
    }
    double nmin = std::numeric_limits<double>::infinity(), nmax = 0.0;
    for (const SweepRun& r : rep.runs) {
      nmin = std::min(nmin, r.sup_N);
      nmax = std::max(nmax, r.sup_N);
    }
    rep.N_ratio = nmin > 0.0 ? nmax / nmin : 0.0;
  }
  return rep;
}

}  // namespace slabflow

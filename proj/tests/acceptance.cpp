// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                 runs all criteria
//   acceptance --criterion N   runs only criterion N
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include "slabflow/harness.hpp"
#include "slabflow/identities.hpp"
#include "slabflow/norms.hpp"
#include "slabflow/polyharmonic.hpp"

using namespace slabflow;

namespace {

const double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::require(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  std::printf("    [%s] %s\n", ok ? "ok" : "FAIL", buf);
  pass = pass && ok;
}

// 1. geometric identities on 20 random samples, plus resolution doubling
Outcome geometric_identities() {
  Outcome o;
  const auto fine = Grid::create(16, 16, 33), coarse = Grid::create(8, 8, 17);
  double worst = 0.0;
  std::map<std::string, double> worst_fine, worst_coarse;
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t seed = 100 + 2 * i;
    const IdentityReport r =
        verify_identities(random_flow_map(fine, 2, 0.05, seed), random_band_limited(fine, 2, 0.05, seed + 1));
    worst = std::max(worst, r.max_residual());
    for (const auto& [k, v] : r.residuals) worst_fine[k] = std::max(worst_fine[k], v);
    if (i < 5) {
      const IdentityReport c =
          verify_identities(random_flow_map(coarse, 2, 0.05, seed), random_band_limited(coarse, 2, 0.05, seed + 1));
      for (const auto& [k, v] : c.residuals) worst_coarse[k] = std::max(worst_coarse[k], v);
    }
  }
  o.require(worst < 1e-8, "20 samples (16x16x33, strain 0.05): %zu residuals, max %.2e < 1e-8", worst_fine.size(), worst);
  int bad = 0;
  for (const auto& [k, v] : worst_fine) {
    const bool ok = v <= worst_coarse[k] || v < 1e-10;
    if (!ok) std::printf("      %s: 8x8x17 %.2e -> 16x16x33 %.2e\n", k.c_str(), worst_coarse[k], v);
    bad += !ok;
  }
  o.require(bad == 0, "resolution doubling: every residual decreases or sits below 1e-10 (%d exceptions)", bad);
  return o;
}

// 2. polyharmonic manufactured solutions and linearity
Outcome polyharmonic() {
  Outcome o;
  const auto g = Grid::create(16, 16, 33);
  const ScalarField u = ScalarField::from_function(g, [](double a, double b, double c) {
    return std::sin(2 * pi * a) * std::cos(4 * pi * b) * std::exp(c) + std::cos(2 * pi * (a + b)) * std::sin(2 * c) + c * c * c;
  });
  const std::vector<std::vector<TraceOp>> ops{{TraceOp::Value},
                                              {TraceOp::Value, TraceOp::D3},
                                              {TraceOp::Value, TraceOp::D3, TraceOp::Lap},
                                              {TraceOp::Value, TraceOp::D3, TraceOp::D33, TraceOp::LapD3}};
  auto problem = [&](const ScalarField& f, int m) {
    PolyharmonicProblem pb;
    pb.m = m;
    pb.rhs = f;
    for (int i = 0; i < m; ++i) pb.rhs = laplacian(pb.rhs);
    for (Face face : {Face::Bottom, Face::Top}) {
      pb.ops[static_cast<int>(face)] = ops[m - 1];
      for (TraceOp op : ops[m - 1]) pb.data[static_cast<int>(face)].push_back(apply_trace(f, op, face));
    }
    return pb;
  };
  for (int m = 1; m <= 4; ++m) {
    const double err = (solve_polyharmonic(problem(u, m)) - u).max_abs();
    o.require(err < 1e-7, "m = %d manufactured error %.2e < 1e-7", m, err);
  }
  const ScalarField w = random_band_limited(g, 3, 1.0, 9)[0];
  for (int m = 1; m <= 4; ++m) {
    PolyharmonicProblem a = problem(u, m), b = problem(w, m), c = a;
    c.rhs = 3.0 * a.rhs - b.rhs;
    for (int f = 0; f < 2; ++f)
      for (int i = 0; i < m; ++i) c.data[f][i] = 3.0 * a.data[f][i] - b.data[f][i];
    const ScalarField lhs = solve_polyharmonic(c);
    const double err = (lhs - (3.0 * solve_polyharmonic(a) - solve_polyharmonic(b))).max_abs() / std::max(1.0, lhs.max_abs());
    o.require(err < 1e-12, "m = %d linearity defect %.2e < 1e-12", m, err);
  }
  return o;
}

// 3. well-prepared data across kappa
Outcome initial_data() {
  Outcome o;
  const auto g = Grid::create(16, 16, 33);
  const VectorField u0 = divergence_free_seed(g, "random", 0.5, 7);
  const std::vector<double> kappas{1e2, 1e3, 1e4};
  std::vector<EosParams> params;
  for (double k : kappas) params.push_back(EosParams::make(k));
  const auto rows = kappa_uniformity_report(params, u0);
  for (const UniformityRow& r : rows) {
    std::printf("      kappa %.0e: r = %.2e %.2e %.2e %.2e  |v0-u0|_C2 %.3e  norms %.3e %.3e %.3e %.3e\n", r.kappa,
                r.compat_l2[0], r.compat_l2[1], r.compat_l2[2], r.compat_l2[3], r.v0_minus_u0_c2, r.v0_h4,
                r.v0_h4_boundary, r.q0_h4, r.q0_h4_boundary);
  }
  double r01 = 0.0;
  for (const UniformityRow& r : rows) r01 = std::max({r01, r.compat_l2[0], r.compat_l2[1]});
  o.require(r01 < 1e-9, "r0, r1 max %.2e < 1e-9", r01);
  for (int j = 2; j <= 3; ++j) {
    const double C = rows[0].compat_l2[j] * kappas[0];
    bool ok = true;
    for (std::size_t i = 1; i < rows.size(); ++i) ok = ok && rows[i].compat_l2[j] <= 2.0 * C / kappas[i];
    o.require(ok, "r%d <= C/kappa with C = %.2e from kappa = 1e2 (observed %.2e at 1e3, %.2e at 1e4)", j, C,
              rows[1].compat_l2[j], rows[2].compat_l2[j]);
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double ratio = rows[i].v0_minus_u0_c2 / rows[i + 1].v0_minus_u0_c2, expect = kappas[i + 1] / kappas[i];
    o.require(std::abs(ratio / expect - 1.0) <= 0.3, "|v0-u0|_C2 ratio %.3f vs kappa ratio %.0f", ratio, expect);
  }
  const std::array<double UniformityRow::*, 4> norms{&UniformityRow::v0_h4, &UniformityRow::v0_h4_boundary,
                                                      &UniformityRow::q0_h4, &UniformityRow::q0_h4_boundary};
  const char* names[] = {"||v0||_H4", "|v0|_H4(Gamma)", "||q0||_H4", "|q0|_H4(Gamma)"};
  for (int n = 0; n < 4; ++n) {
    double lo = 1e300, hi = 0.0;
    for (const UniformityRow& r : rows) {
      lo = std::min(lo, r.*norms[n]);
      hi = std::max(hi, r.*norms[n]);
    }
    o.require(hi / lo - 1.0 < 0.5, "%s varies by %.1f%% < 50%%", names[n], 100.0 * (hi / lo - 1.0));
  }
  return o;
}

// 4. dynamics: equilibrium, RK4 order, linear acoustics
Outcome dynamics() {
  Outcome o;
  {
    const auto g = Grid::create(8, 8, 9);
    const EosParams p = EosParams::make(100.0);
    FlowState s = FlowState::at_rest(g, p);
    for (int i = 0; i < 1000; ++i) s = step(s, 1e-3, p);
    const double drift = std::max(max_abs(s.v), max_abs(s.eta - identity_map(g)));
    o.require(drift < 1e-12, "static equilibrium over 1000 steps: drift %.2e < 1e-12", drift);
  }
  {
    const auto g = Grid::create(8, 8, 17);
    const EosParams p = EosParams::make(100.0);
    const FlowState s0 = initial_state(construct(p, divergence_free_seed(g, "random", 0.5, 3)));
    const double T = 0.004;
    std::vector<VectorField> v;
    for (int n : {32, 64, 128}) {
      FlowState s = s0;
      for (int i = 0; i < n; ++i) s = step(s, T / n, p);
      v.push_back(s.v);
    }
    const double slope = std::log2(max_abs(v[0] - v[1]) / max_abs(v[1] - v[2]));
    o.require(std::abs(slope - 4.0) <= 0.3, "RK4 self-convergence slope %.3f (4 +- 0.3)", slope);
  }
  {
    const auto g = Grid::create(4, 4, 33);
    const EosParams p = EosParams::make(100.0, 1.0, 1.0, 0.0);
    FlowState s = FlowState::at_rest(g, p);
    const double d = 1e-6, w = pi * std::sqrt(p.kappa), T = pi / (2 * w);
    s.v[2] = ScalarField::from_function(g, [&](double, double, double y) { return d * std::cos(pi * y); });
    const int n = 400;
    for (int i = 0; i < n; ++i) s = step(s, T / n, p);
    const ScalarField exact = ScalarField::from_function(
        g, [&](double, double, double y) { return -d * w * std::cos(pi * y) * std::sin(w * s.t); });
    const double err = (rhs(s, p).d_v[2] - exact).max_abs() / exact.max_abs();
    o.require(err < 1e-3, "vertical acoustic mode, d_v vs linear oracle at quarter period: %.2e < 1e-3", err);
  }
  return o;
}

// 5. wave-equation algebra on a random ensemble, with source-term ablations
Outcome wave_algebra() {
  Outcome o;
  const auto g = Grid::create(16, 16, 33);
  const EosParams p = EosParams::make(100.0);
  double worst = 0.0, worst_w = 0.0, min_gain = 1e300;
  int ablations = 0;
  for (int i = 0; i < 5; ++i) {
    FlowState s = FlowState::at_rest(g, p);
    s.eta = random_flow_map(g, 2, 0.05, 200 + 2 * i);
    s.v = random_band_limited(g, 2, 0.05, 201 + 2 * i);
    s.rho0 += random_band_limited(g, 2, 0.1, 300 + i)[0];  // nonuniform, so every rho0 term is active
    const CascadeBundle cb = time_derivative_cascade(s, p, kMaxCascadeOrder, TraceMode::ClosureOnly);
    auto ablate = [&](const WaveTerms& w) {
      const double base = w.relative_residual();
      for (const auto& [name, t] : w.terms) {
        if (t.max_abs() <= 1e-12 * w.lhs.max_abs()) continue;  // term vanishes identically at this order
        min_gain = std::min(min_gain, w.relative_residual(name) / std::max(base, 1e-300));
        ++ablations;
      }
      return base;
    };
    for (int r = 1; r <= 3; ++r) worst = std::max(worst, ablate(wave_equation_terms(cb, r)));
    for (int l = 0; l < kWeightedWavePatterns; ++l)
      for (int a1 = l; a1 >= 0; --a1) worst_w = std::max(worst_w, ablate(weighted_wave_terms(cb, l, {a1, l - a1})));
  }
  o.require(worst < 1e-6, "wave equations r = 1..3: max relative residual %.2e < 1e-6", worst);
  o.require(worst_w < 1e-6, "weighted patterns (3): max relative residual %.2e < 1e-6", worst_w);
  o.require(min_gain >= 1e3, "%d source-term ablations: smallest residual increase %.2e >= 1e3", ablations, min_gain);
  return o;
}

// 6. Cauchy invariance along a kappa = 1e2, sigma = 1, T = 0.01 run
Outcome cauchy() {
  Outcome o;
  const auto g = Grid::create(16, 16, 33);
  const EosParams p = EosParams::make(100.0);
  const FlowState s0 = initial_state(construct(p, divergence_free_seed(g, "random", 0.5, 7)));
  RunOptions ro;
  ro.t_final = 0.01;
  ro.snapshot_every = 1;
  ro.compute_energy = false;
  int n = 16;
  while (ro.t_final / n > cfl_dt(s0, p, ro.stepper)) n *= 2;
  ro.fixed_dt = ro.t_final / n;
  const RunResult r = run_simulation(s0, p, ro);
  if (!r.completed) {
    o.require(false, "run failed: %s", r.failure.c_str());
    return o;
  }
  const double res = cauchy_invariance_residual(r.snapshots, p);
  o.require(res < 1e-5, "residual %.2e < 1e-5 (%d steps)", res, r.steps);
  std::vector<VectorField> I;
  for (int stride : {1, 2, 4}) {
    std::vector<FlowState> sub;
    for (std::size_t i = 0; i < r.snapshots.size(); i += stride) sub.push_back(r.snapshots[i]);
    I.push_back(cauchy_baroclinic_integral(sub, p));
  }
  const double order = std::log2(max_abs(I[2] - I[1]) / max_abs(I[1] - I[0]));
  o.require(std::abs(order - 2.0) <= 0.3, "trapezoid refinement order %.3f (2 +- 0.3)", order);
  return o;
}

// 7. incompressible-limit sweep
Outcome limit() {
  Outcome o;
  SweepConfig c;
  c.kappas = {1e2, 1e3, 1e4};
  c.run.t_final = 0.005;
  c.run.snapshot_every = 40;
  const SweepReport r = sweep_kappa(c);
  std::printf("      shared dt %.3e (Cauchy-in-kappa proxy; no incompressible reference)\n", r.dt);
  for (const SweepRun& run : r.runs)
    std::printf("      kappa %.0e: steps %d  sup N %.4e  sup|div v| %.3e  sup|R-b| %.3e\n", run.kappa, run.steps,
                run.sup_N, run.sup_div, run.sup_R_minus_beta);
  o.require(!r.partial, "all runs completed");
  if (r.partial) return o;
  o.require(std::abs(r.div_fit.slope + 1.0) <= 0.3, "sup_t |div v| slope %.3f (fit residual %.1e), -1 +- 0.3",
            r.div_fit.slope, r.div_fit.residual);
  o.require(r.N_ratio < 2.0, "max/min over kappa of sup_t N = %.3f < 2", r.N_ratio);
  bool dec = true;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    std::printf("      |v(%.0e) - v(%.0e)|: C0 %.3e  C2 %.3e\n", r.pairs[i].kappa_a, r.pairs[i].kappa_b, r.pairs[i].c0,
                r.pairs[i].c2);
    if (i > 0) dec = dec && r.pairs[i].c2 < r.pairs[i - 1].c2 && r.pairs[i].c0 < r.pairs[i - 1].c0;
  }
  o.require(dec, "pairwise C0 and C2 distances decrease along the sweep");
  o.require(std::abs(r.R_fit.slope + 1.0) <= 0.3, "sup_t |R - beta| slope %.3f (fit residual %.1e), -1 +- 0.3",
            r.R_fit.slope, r.R_fit.residual);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"geometric identities", geometric_identities},
      {"polyharmonic solver", polyharmonic},
      {"initial-data construction", initial_data},
      {"dynamics correctness", dynamics},
      {"wave-equation algebra", wave_algebra},
      {"Cauchy invariance", cauchy},
      {"incompressible-limit sweep", limit}};
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", criteria.size());
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    std::printf("criterion %zu (%s)\n", i + 1, criteria[i].first);
    std::fflush(stdout);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.require(false, "exception: %s", e.what());
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("CRITERION %zu: %s (%.1f s)\n", i + 1, out.pass ? "PASS" : "FAIL", sec);
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed ? 1 : 0;
}

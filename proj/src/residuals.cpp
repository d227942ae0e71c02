#include "slabflow/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slabflow/norms.hpp"

namespace slabflow {

namespace {

using SJet = std::vector<ScalarField>;

ScalarField leibniz(const SJet& x, const SJet& y, int k) {
  ScalarField out = x[0] * y[k];
  for (int i = 1; i <= k; ++i) out.axpy(binomial(k, i), x[i] * y[k - i]);
  return out;
}

SJet product_jet(const SJet& x, const SJet& y, int n) {
  SJet out;
  for (int k = 0; k <= n; ++k) out.push_back(leibniz(x, y, k));
  return out;
}

SJet shift(const SJet& x) { return SJet(x.begin() + 1, x.end()); }

ScalarField dbar(ScalarField f, const std::array<int, 2>& mi) {
  for (int i = 0; i < mi[0]; ++i) f = tangential_derivative(f, 1);
  for (int i = 0; i < mi[1]; ++i) f = tangential_derivative(f, 2);
  return f;
}

SJet component_jet(const std::vector<MatrixField>& M, int mu, int al) {
  SJet out;
  for (const auto& m : M) out.push_back(m[mu][al]);
  return out;
}

// jet of f(g) from derivatives fd(k, g0) of f
template <class Fd>
SJet compose_jet(const SJet& g, int n, Fd fd) {
  SJet out{g[0].map([&](double x) { return fd(0, x); })};
  std::vector<ScalarField> d(n + 1);
  for (int k = 1; k <= n; ++k) d[k] = g[0].map([&](double x) { return fd(k, x); });
  for (int k = 1; k <= n; ++k) out.push_back(faa_di_bruno(d, g, k));
  return out;
}

void require(const CascadeBundle& cb, int order, const char* what) {
  if (cb.order < order) {
    std::ostringstream os;
    os << what << " needs cascade order " << order << ", got " << cb.order;
    throw SlabError(os.str());
  }
}

// R' jets, R'(q) = dR/dq along the trajectory
SJet rprime_jet(const CascadeBundle& cb, int n) {
  const EosParams& p = cb.params;
  return compose_jet(cb.q, n, [&](int k, double q) { return eos_density_derivative(q, k + 1, p); });
}

// sum_{nu, alpha} a^{nu alpha} X_{nu alpha}
template <class Fn>
ScalarField contract_a(const MatrixField& a, Fn X) {
  ScalarField acc(a[0][0].grid());
  for (int nu = 0; nu < 3; ++nu)
    for (int al = 0; al < 3; ++al) acc += a[nu][al] * X(nu, al);
  return acc;
}

// a^{na} A^{ma} d_n d_m f
ScalarField second_order_operator(const MatrixField& a, const MatrixField& A, const ScalarField& f) {
  std::array<ScalarField, 3> df{partial(f, 0), partial(f, 1), partial(f, 2)};
  ScalarField acc(f.grid());
  for (int nu = 0; nu < 3; ++nu)
    for (int mu = 0; mu < 3; ++mu) {
      ScalarField c(f.grid());
      for (int al = 0; al < 3; ++al) c += a[nu][al] * A[mu][al];
      acc += c * partial(df[mu], nu);
    }
  return acc;
}

// a^{na} (d_n A^{ma}) d_m f
ScalarField first_order_operator(const MatrixField& a, const MatrixField& A, const ScalarField& f) {
  ScalarField acc(f.grid());
  for (int mu = 0; mu < 3; ++mu) {
    const ScalarField dmf = partial(f, mu);
    for (int al = 0; al < 3; ++al)
      for (int nu = 0; nu < 3; ++nu) acc += a[nu][al] * (partial(A[mu][al], nu) * dmf);
  }
  return acc;
}

}  // namespace

double WaveTerms::residual(const std::string& drop) const {
  ScalarField r = lhs;
  for (const auto& [name, t] : terms)
    if (name != drop) r -= t;
  return l2_norm(r);
}

double WaveTerms::lhs_norm() const { return l2_norm(lhs); }

double WaveTerms::relative_residual(const std::string& drop) const {
  double scale = lhs_norm();
  for (const auto& [name, t] : terms) scale = std::max(scale, l2_norm(t));
  return scale > 0.0 ? residual(drop) / scale : 0.0;
}

WaveTerms wave_equation_terms(const CascadeBundle& cb, int r) {
  if (r < 1 || r > 3) throw SlabError("wave equation order must be in 1..3");
  require(cb, r + 1, "wave equation");
  const GridPtr& grid = cb.rho0.grid();
  const MatrixField& a = cb.a[0];
  const MatrixField& A = cb.A[0];
  const SJet JRp = product_jet(cb.J, rprime_jet(cb, r), r);

  WaveTerms w;
  w.lhs = JRp[0] * cb.q[r + 1] - second_order_operator(a, A, cb.q[r - 1]);

  ScalarField t1(grid);
  for (int j = 1; j <= r; ++j) t1.axpy(-binomial(r, j), JRp[j] * cb.q[r + 1 - j]);

  const std::array<ScalarField, 3> drho{partial(cb.rho0, 0), partial(cb.rho0, 1), partial(cb.rho0, 2)};
  ScalarField t2 = contract_a(a, [&](int nu, int al) { return drho[nu] * cb.v[r][al]; });

  ScalarField t3(grid);
  for (int j = 1; j <= r - 1; ++j) {
    const ScalarField& qk = cb.q[r - 1 - j];
    const std::array<ScalarField, 3> dq{partial(qk, 0), partial(qk, 1), partial(qk, 2)};
    std::array<ScalarField, 3> flux;  // flux_alpha = A_j^{m alpha} d_m q
    for (int al = 0; al < 3; ++al) {
      flux[al] = ScalarField(grid);
      for (int mu = 0; mu < 3; ++mu) flux[al] += cb.A[j][mu][al] * dq[mu];
    }
    t3.axpy(binomial(r - 1, j), contract_a(a, [&](int nu, int al) { return partial(flux[al], nu); }));
  }

  ScalarField t4(grid);
  for (int j1 = 0; j1 <= r - 1; ++j1) {
    const MatrixField& aj = cb.a[j1 + 1];
    const VectorField& vk = cb.v[r - 1 - j1];
    t4.axpy(-binomial(r, j1 + 1), contract_a(aj, [&](int nu, int al) { return partial(vk[al], nu); }));
  }
  t4 = cb.rho0 * t4;

  ScalarField t5 = first_order_operator(a, A, cb.q[r - 1]);

  w.terms = {{"JR'", std::move(t1)}, {"rho0", std::move(t2)}, {"A", std::move(t3)}, {"a", std::move(t4)},
             {"dA", std::move(t5)}};
  return w;
}

WaveTerms weighted_wave_terms(const CascadeBundle& cb, int pattern, std::array<int, 2> mi) {
  static const std::array<std::pair<double, int>, 3> kPatterns{{{1.0, 3}, {0.5, 2}, {0.0, 1}}};
  if (pattern < 0 || pattern >= kWeightedWavePatterns) throw SlabError("weighted wave pattern must be 0, 1 or 2");
  const auto [ell, nt] = kPatterns[pattern];
  if (mi[0] < 0 || mi[1] < 0 || mi[0] + mi[1] != 3 - nt) throw SlabError("tangential multi-index does not match pattern");
  require(cb, nt + 2, "weighted wave equation");
  const GridPtr& grid = cb.rho0.grid();
  const double w = std::pow(rkk(cb.params), ell);
  const MatrixField& a = cb.a[0];
  const MatrixField& A = cb.A[0];
  const ScalarField& rho0 = cb.rho0;
  const int n = nt + 1;  // time order of D^3 d_t

  const SJet qt = shift(cb.q);
  const SJet JRp = product_jet(cb.J, rprime_jet(cb, n), n);
  auto P = [&](const ScalarField& f) { return dbar(f, mi); };  // tangential part of D^3

  WaveTerms out;
  out.lhs = w * (JRp[0] * P(cb.q[nt + 2]) - second_order_operator(a, A, P(cb.q[nt])));

  // -[D^3 d_t, JR'] q_t
  ScalarField t1 = P(leibniz(JRp, qt, n)) - JRp[0] * P(qt[n]);
  t1 *= -w;

  // [D^3, rho0] d_t (R^{-1} R' q_t)
  const SJet Rinv = compose_jet(cb.R, n, [](int k, double x) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c *= -i;
    return c * std::pow(x, -(k + 1));
  });
  const SJet Z = product_jet(product_jet(Rinv, rprime_jet(cb, n), n), qt, n);
  ScalarField t2 = P(rho0 * Z[n]) - rho0 * P(Z[n]);
  t2 *= w;

  // a^{na} (d_n rho0) D^3 d_t v_a
  const std::array<ScalarField, 3> drho{partial(rho0, 0), partial(rho0, 1), partial(rho0, 2)};
  ScalarField t3 = contract_a(a, [&](int nu, int al) { return drho[nu] * P(cb.v[n][al]); });
  t3 *= w;

  // a^{na} d_n ([D^3, A^{ma}] d_m q)
  std::array<SJet, 3> dq;
  for (int mu = 0; mu < 3; ++mu)
    for (int k = 0; k <= nt; ++k) dq[mu].push_back(partial(cb.q[k], mu));
  std::array<ScalarField, 3> comm;
  for (int al = 0; al < 3; ++al) {
    comm[al] = ScalarField(grid);
    for (int mu = 0; mu < 3; ++mu) {
      comm[al] += P(leibniz(component_jet(cb.A, mu, al), dq[mu], nt));
      comm[al] -= A[mu][al] * partial(P(cb.q[nt]), mu);
    }
  }
  ScalarField t4 = contract_a(a, [&](int nu, int al) { return partial(comm[al], nu); });
  t4 *= w;

  // a^{na} d_n ([D^3, rho0] d_t v_a)
  std::array<ScalarField, 3> comm_v;
  for (int al = 0; al < 3; ++al) comm_v[al] = P(rho0 * cb.v[n][al]) - rho0 * P(cb.v[n][al]);
  ScalarField t5 = contract_a(a, [&](int nu, int al) { return partial(comm_v[al], nu); });
  t5 *= w;

  // -rho0 [D^3 d_t, a^{na}] d_n v_a
  ScalarField t6(grid);
  for (int nu = 0; nu < 3; ++nu)
    for (int al = 0; al < 3; ++al) {
      SJet dv;
      for (int k = 0; k <= n; ++k) dv.push_back(partial(cb.v[k][al], nu));
      t6 += P(leibniz(component_jet(cb.a, nu, al), dv, n));
      t6 -= a[nu][al] * partial(P(cb.v[n][al]), nu);
    }
  t6 = rho0 * t6;
  t6 *= -w;

  // a^{na} (d_n A^{ma}) d_m D^3 q
  ScalarField t7 = first_order_operator(a, A, P(cb.q[nt]));
  t7 *= w;

  out.terms = {{"[D3dt,JR']", std::move(t1)}, {"[D3,rho0]dt", std::move(t2)}, {"rho0", std::move(t3)},
               {"[D3,A]", std::move(t4)},      {"[D3,rho0]v", std::move(t5)},  {"[D3dt,a]", std::move(t6)},
               {"dA", std::move(t7)}};
  return out;
}

double wave_residual(const FlowState& s, const EosParams& p, int r) {
  const CascadeBundle cb = time_derivative_cascade(s, p, r + 1, TraceMode::ClosureOnly);
  return wave_equation_terms(cb, r).residual();
}

double weighted_wave_residual(const CascadeBundle& cb, int pattern, const std::string& drop) {
  const int nbar = pattern;  // patterns 0, 1, 2 carry 0, 1, 2 tangential derivatives
  double m = 0.0;
  for (int a1 = nbar; a1 >= 0; --a1) m = std::max(m, weighted_wave_terms(cb, pattern, {a1, nbar - a1}).residual(drop));
  return m;
}

double weighted_wave_relative_residual(const CascadeBundle& cb, int pattern, const std::string& drop) {
  double m = 0.0;
  for (int a1 = pattern; a1 >= 0; --a1)
    m = std::max(m, weighted_wave_terms(cb, pattern, {a1, pattern - a1}).relative_residual(drop));
  return m;
}

double weighted_wave_residual(const FlowState& s, const EosParams& p, int pattern) {
  const CascadeBundle cb = time_derivative_cascade(s, p, kMaxCascadeOrder, TraceMode::ClosureOnly);
  return weighted_wave_residual(cb, pattern);
}

double continuity_residual(const CascadeBundle& cb) {
  double m = (cb.R[0] * cb.J[0] - cb.rho0).max_abs() / cb.rho0.max_abs();
  // higher orders relative to the size of their leading term
  for (int k = 1; k <= cb.order; ++k) {
    const double e = leibniz(cb.R, cb.J, k).max_abs();
    if (e > 0.0) m = std::max(m, e / (cb.R[k].max_abs() * cb.J[0].max_abs()));
  }
  return m;
}

double divergence_expression_residual(const CascadeBundle& cb) {
  require(cb, 1, "divergence expression");
  const SJet Rp = rprime_jet(cb, 0);
  ScalarField r = contract_a(cb.a[0], [&](int nu, int al) { return partial(cb.v[0][al], nu); });
  r += Rp[0] * cb.q[1] / cb.R[0];
  return r.max_abs();
}

std::array<double, 2> eos_time_chain_residuals(const CascadeBundle& cb) {
  require(cb, 2, "EOS chain rule");
  const EosParams& p = cb.params;
  const ScalarField R1 = eos_density_derivative(cb.q[0], 1, p);
  const ScalarField R2 = eos_density_derivative(cb.q[0], 2, p);
  const ScalarField e1 = cb.R[1] - R1 * cb.q[1];
  const ScalarField e2 = cb.R[2] - R1 * cb.q[2] - R2 * (cb.q[1] * cb.q[1]);
  return {e1.max_abs(), e2.max_abs()};
}

namespace {

constexpr int kEps[3][3][3] = {
    {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
    {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
    {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}},
};

struct CauchySample {
  VectorField lhs, integrand;
};

CauchySample cauchy_sample(const FlowState& s, const EosParams& p) {
  const CascadeBundle cb = time_derivative_cascade(s, p, 0);
  const MatrixField& G = cb.G[0];
  const MatrixField dv = vector_gradient(s.v);
  const ScalarField& R = cb.R[0];
  const ScalarField R2 = R * R;
  const std::array<ScalarField, 3> dR{partial(R, 0) / R2, partial(R, 1) / R2, partial(R, 2) / R2};
  const std::array<ScalarField, 3> dq{partial(cb.q_tilde[0], 0), partial(cb.q_tilde[0], 1),
                                      partial(cb.q_tilde[0], 2)};
  // b^mu = a^{l mu} d_l q
  VectorField b;
  for (int mu = 0; mu < 3; ++mu) {
    b[mu] = ScalarField(s.grid);
    for (int l = 0; l < 3; ++l) b[mu] += cb.a[0][l][mu] * dq[l];
  }
  CauchySample out{make_vec<Support::Volume>(s.grid), make_vec<Support::Volume>(s.grid)};
  for (int al = 0; al < 3; ++al)
    for (int be = 0; be < 3; ++be)
      for (int ga = 0; ga < 3; ++ga) {
        const int e = kEps[al][be][ga];
        if (e == 0) continue;
        for (int mu = 0; mu < 3; ++mu) {
          out.lhs[al].axpy(e, dv[mu][be] * G[mu][ga]);
          out.integrand[al].axpy(e, b[mu] * G[mu][ga] * dR[be]);
        }
      }
  return out;
}

}  // namespace

namespace {

void check_snapshots(const std::vector<FlowState>& snaps) {
  if (snaps.size() < 3) throw SlabError("Cauchy invariance needs at least 3 snapshots");
  for (std::size_t i = 1; i < snaps.size(); ++i)
    if (!(snaps[i].t > snaps[i - 1].t)) throw SlabError("snapshot times must increase");
}

VectorField trapezoid(const std::vector<FlowState>& snaps, const std::vector<CauchySample>& samples) {
  VectorField acc = make_vec<Support::Volume>(snaps.front().grid);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double h = snaps[i].t - snaps[i - 1].t;
    for (int al = 0; al < 3; ++al) {
      acc[al].axpy(0.5 * h, samples[i - 1].integrand[al]);
      acc[al].axpy(0.5 * h, samples[i].integrand[al]);
    }
  }
  return acc;
}

}  // namespace

VectorField cauchy_baroclinic_integral(const std::vector<FlowState>& snaps, const EosParams& p) {
  check_snapshots(snaps);
  std::vector<CauchySample> samples;
  for (const auto& s : snaps) samples.push_back(cauchy_sample(s, p));
  return trapezoid(snaps, samples);
}

double cauchy_invariance_residual(const std::vector<FlowState>& snaps, const EosParams& p) {
  check_snapshots(snaps);
  std::vector<CauchySample> samples;
  for (const auto& s : snaps) samples.push_back(cauchy_sample(s, p));
  return max_abs(samples.back().lhs - samples.front().lhs - trapezoid(snaps, samples));
}

ResidualReport residual_report(const FlowState& s, const EosParams& p) {
  const CascadeBundle cb = time_derivative_cascade(s, p, kMaxCascadeOrder, TraceMode::ClosureOnly);
  ResidualReport rep;
  for (int r = 1; r <= 3; ++r) {
    const WaveTerms w = wave_equation_terms(cb, r);
    rep.wave[r - 1] = w.residual();
    rep.wave_relative[r - 1] = w.relative_residual();
  }
  for (int l = 0; l < kWeightedWavePatterns; ++l) {
    rep.weighted_wave[l] = weighted_wave_residual(cb, l);
    rep.weighted_wave_relative[l] = weighted_wave_relative_residual(cb, l);
  }
  rep.continuity = continuity_residual(cb);
  rep.divergence_expression = divergence_expression_residual(cb);
  return rep;
}

}  // namespace slabflow

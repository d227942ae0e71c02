#include "slabflow/energy.hpp"

#include <cmath>
#include <sstream>

#include "slabflow/norms.hpp"

namespace slabflow {

namespace {

template <Support S>
Field<S> dbar(Field<S> f, int a1, int a2) {
  for (int i = 0; i < a1; ++i) f = tangential_derivative(f, 1);
  for (int i = 0; i < a2; ++i) f = tangential_derivative(f, 2);
  return f;
}

// Pointwise product; integrands are formed without dealiasing so that weighted
// squares stay nonnegative node by node.
template <Support S>
Field<S> pmul(const Field<S>& a, const Field<S>& b) {
  Field<S> out(a.grid());
  for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] * b[n];
  return out;
}

// integral of w * sum_c f_c^2
double weighted_square(const ScalarField& w, const std::vector<ScalarField>& f) {
  ScalarField acc(w.grid());
  for (const auto& c : f)
    for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += w[n] * c[n] * c[n];
  return integrate(acc);
}

std::vector<ScalarField> field_at(const CascadeBundle& cb, FieldSelector field, int nt) {
  const int avail = field == FieldSelector::Q ? static_cast<int>(cb.q_tilde.size())
                                              : static_cast<int>(field == FieldSelector::Eta ? cb.eta.size() : cb.v.size());
  if (nt >= avail) {
    std::ostringstream os;
    os << "cascade depth " << cb.order << " insufficient for " << nt << " time derivatives";
    throw SlabError(os.str());
  }
  switch (field) {
    case FieldSelector::Eta: return {cb.eta[nt][0], cb.eta[nt][1], cb.eta[nt][2]};
    case FieldSelector::V: return {cb.v[nt][0], cb.v[nt][1], cb.v[nt][2]};
    case FieldSelector::Q: return {cb.q_tilde[nt]};
  }
  return {};
}

std::vector<std::array<int, 2>> multi_indices(int n) {
  std::vector<std::array<int, 2>> out;
  for (int a1 = n; a1 >= 0; --a1) out.push_back({a1, n - a1});
  return out;
}

struct FaceForm {
  BoundaryGeometry b;
  SurfaceField det;
};

std::array<FaceForm, 2> face_forms(const CascadeBundle& cb) {
  std::array<FaceForm, 2> out;
  for (int f = 0; f < 2; ++f) {
    out[f].b = boundary_geometry(cb.G[0], static_cast<Face>(f));
    out[f].det = out[f].b.g[0][0] * out[f].b.g[1][1] - out[f].b.g[0][1] * out[f].b.g[0][1];
  }
  return out;
}

// sum over faces of  int sqrt(g) g^{ij} Pi(d-bar_i X) . Pi(d-bar_j X) dS, written as a
// sum of squares: |w1|^2 / g11 + |g11 w2 - g12 w1|^2 / (g11 det g), w_i = Pi d-bar_i X.
double boundary_form(const std::array<FaceForm, 2>& faces, const std::vector<ScalarField>& X) {
  double total = 0.0;
  for (const FaceForm& ff : faces) {
    const BoundaryGeometry& b = ff.b;
    std::array<SurfaceVector, 2> w;
    std::array<SurfaceVector, 2> dX;
    for (int i = 0; i < 2; ++i)
      for (int al = 0; al < 3; ++al) dX[i][al] = tangential_derivative(trace(X[al], b.face), i + 1);
    const GridPtr& grid = b.sqrt_g.grid();
    for (int i = 0; i < 2; ++i)
      for (int al = 0; al < 3; ++al) {
        SurfaceField acc(grid);
        for (int be = 0; be < 3; ++be) acc += pmul(b.Pi[al][be], dX[i][be]);
        w[i][al] = std::move(acc);
      }
    SurfaceField integrand(grid);
    const SurfaceField &g11 = b.g[0][0], &g12 = b.g[0][1];
    for (std::size_t n = 0; n < integrand.size(); ++n) {
      double s = 0.0;
      for (int al = 0; al < 3; ++al) {
        const double w1 = w[0][al][n], w2 = w[1][al][n];
        const double c = g11[n] * w2 - g12[n] * w1;
        s += w1 * w1 / g11[n] + c * c / (g11[n] * ff.det[n]);
      }
      integrand[n] = b.sqrt_g[n] * s;
    }
    total += integrate(integrand);
  }
  return total;
}

// sum over faces of int |Pi X|^2 dS
double projected_boundary_square(const std::array<FaceForm, 2>& faces, const std::vector<ScalarField>& X) {
  double total = 0.0;
  for (const FaceForm& ff : faces) {
    const BoundaryGeometry& b = ff.b;
    SurfaceVector x;
    for (int al = 0; al < 3; ++al) x[al] = trace(X[al], b.face);
    SurfaceField integrand(b.sqrt_g.grid());
    for (std::size_t n = 0; n < integrand.size(); ++n)
      for (int al = 0; al < 3; ++al) {
        double y = 0.0;
        for (int be = 0; be < 3; ++be) y += b.Pi[al][be][n] * x[be][n];
        integrand[n] += y * y;
      }
    total += integrate(integrand);
  }
  return total;
}

struct Coefficients {
  ScalarField R, Rp, JRp, JRp_over_R, inv_rho0, Rp_over_rho0;
};

Coefficients coefficients(const CascadeBundle& cb) {
  Coefficients c;
  c.R = cb.R[0];
  c.Rp = cb.R[0].map([&](double r) { return 1.0 / eos_pressure_derivative(r, 1, cb.params); });
  c.JRp = pmul(cb.J[0], c.Rp);
  c.JRp_over_R = c.JRp / c.R;
  c.inv_rho0 = cb.rho0.map([](double x) { return 1.0 / x; });
  c.Rp_over_rho0 = c.Rp / cb.rho0;
  return c;
}

// sum_alpha (A^{nu alpha} d_nu f)^2 weighted by w
double cofactor_gradient_square(const ScalarField& w, const MatrixField& A, const ScalarField& f) {
  const std::array<ScalarField, 3> df{partial(f, 0), partial(f, 1), partial(f, 2)};
  std::vector<ScalarField> comps;
  for (int al = 0; al < 3; ++al) {
    ScalarField acc(f.grid());
    for (int nu = 0; nu < 3; ++nu) acc += pmul(A[nu][al], df[nu]);
    comps.push_back(std::move(acc));
  }
  return weighted_square(w, comps);
}

std::vector<ScalarField> apply_dbar(const std::vector<ScalarField>& f, int a1, int a2, double w) {
  std::vector<ScalarField> out;
  for (const auto& c : f) out.push_back(w * dbar(c, a1, a2));
  return out;
}

}  // namespace

const std::vector<DerivativePattern>& weighted_patterns(int r) {
  static const std::array<std::vector<DerivativePattern>, 4> table{{
      {{"dbar", 0.0, 1, 0}, {"dt", 0.0, 0, 1}},
      {{"dbar^2", 0.0, 2, 0}, {"dbar dt", 0.0, 1, 1}, {"rkk^1/2 dt^2", 0.5, 0, 2}},
      {{"dbar^2 dt", 0.0, 2, 1}, {"rkk^1/2 dbar dt^2", 0.5, 1, 2}, {"rkk dt^3", 1.0, 0, 3}},
      {{"rkk dbar^3 dt", 1.0, 3, 1},
       {"rkk dbar^2 dt^2", 1.0, 2, 2},
       {"rkk^3/2 dbar dt^3", 1.5, 1, 3},
       {"rkk^2 dt^4", 2.0, 0, 4}},
  }};
  if (r < 1 || r > 4) throw SlabError("weighted derivative order must be in 1..4");
  return table[r - 1];
}

std::vector<WeightedDerivative> weighted_derivatives(const CascadeBundle& cb, FieldSelector field, int r) {
  const double rk = rkk(cb.params);
  std::vector<WeightedDerivative> out;
  for (const DerivativePattern& p : weighted_patterns(r)) {
    const std::vector<ScalarField> base = field_at(cb, field, p.nt);
    for (const auto& mi : multi_indices(p.nbar)) {
      WeightedDerivative wd;
      wd.pattern = p;
      wd.tangential = mi;
      wd.weight = std::pow(rk, p.ell);
      wd.components = apply_dbar(base, mi[0], mi[1], wd.weight);
      out.push_back(std::move(wd));
    }
  }
  return out;
}

std::array<EnergyParts, 4> energy_E(const CascadeBundle& cb) {
  const Coefficients c = coefficients(cb);
  const auto faces = face_forms(cb);
  const double sigma = cb.params.sigma;
  std::array<EnergyParts, 4> E;
  for (int r = 1; r <= 4; ++r) {
    for (const auto& d : weighted_derivatives(cb, FieldSelector::V, r))
      E[r - 1].velocity += 0.5 * weighted_square(cb.rho0, d.components);
    for (const auto& d : weighted_derivatives(cb, FieldSelector::Q, r))
      E[r - 1].pressure += 0.5 * weighted_square(c.JRp_over_R, d.components);
    if (sigma != 0.0)
      for (const auto& d : weighted_derivatives(cb, FieldSelector::Eta, r))
        E[r - 1].boundary += 0.5 * sigma * boundary_form(faces, d.components);
  }
  return E;
}

std::pair<std::array<EnergyParts, 3>, std::array<EnergyParts, 3>> energy_W(const CascadeBundle& cb) {
  const Coefficients c = coefficients(cb);
  const auto faces = face_forms(cb);
  const double sigma = cb.params.sigma, rk = rkk(cb.params);
  const ScalarField w1 = pmul(c.inv_rho0, pmul(c.JRp, c.JRp));
  std::array<EnergyParts, 3> W;
  for (int r = 1; r <= 3; ++r) {
    EnergyParts& e = W[r - 1];
    e.velocity = 0.5 * weighted_square(w1, field_at(cb, FieldSelector::Q, r));
    e.pressure = 0.5 * cofactor_gradient_square(c.Rp_over_rho0, cb.A[0], field_at(cb, FieldSelector::Q, r - 1)[0]);
    if (sigma != 0.0) e.boundary = 0.5 * sigma * rk * boundary_form(faces, field_at(cb, FieldSelector::Eta, r));
  }
  // D^3 in {rkk dt^3, rkk^1/2 dt^2 dbar, dt dbar^2}
  const std::array<DerivativePattern, 3> d3{{{"rkk dt^3", 1.0, 0, 3}, {"rkk^1/2 dbar dt^2", 0.5, 1, 2}, {"dbar^2 dt", 0.0, 2, 1}}};
  std::array<EnergyParts, 3> W4;
  for (int l = 0; l < 3; ++l) {
    const DerivativePattern& p = d3[l];
    const double w2 = std::pow(rk, 2.0 * p.ell);
    EnergyParts& e = W4[l];
    const auto q_t = field_at(cb, FieldSelector::Q, p.nt + 1);
    const auto q_0 = field_at(cb, FieldSelector::Q, p.nt);
    const auto eta = field_at(cb, FieldSelector::Eta, p.nt + 1);
    for (const auto& mi : multi_indices(p.nbar)) {
      e.velocity += 0.5 * w2 * weighted_square(w1, apply_dbar(q_t, mi[0], mi[1], 1.0));
      e.pressure += 0.5 * w2 * cofactor_gradient_square(c.Rp_over_rho0, cb.A[0], dbar(q_0[0], mi[0], mi[1]));
      if (sigma != 0.0) e.boundary += 0.5 * sigma * w2 * rk * boundary_form(faces, apply_dbar(eta, mi[0], mi[1], 1.0));
    }
  }
  return {W, W4};
}

double EnergyReport::min_component() const {
  double m = 0.0;
  for (const auto& e : E) m = std::min({m, e.velocity, e.pressure, e.boundary});
  for (const auto& e : W) m = std::min({m, e.velocity, e.pressure, e.boundary});
  for (const auto& e : W4) m = std::min({m, e.velocity, e.pressure, e.boundary});
  for (const auto& [k, v] : N_components) m = std::min(m, v);
  return m;
}

EnergyReport energy_report(const CascadeBundle& cb, double t) {
  if (cb.order < kEnergyCascadeOrder) throw SlabError("energy report needs cascade order 4");
  EnergyReport rep;
  rep.t = t;
  rep.E = energy_E(cb);
  std::tie(rep.W, rep.W4) = energy_W(cb);
  double E = 0.0;
  for (const auto& e : rep.E) E += e.total();
  for (const auto& e : rep.W) E += e.total();
  for (const auto& e : rep.W4) E += e.total();
  rep.E_total = E;

  const double rk = rkk(cb.params);
  auto sq = [](double x) { return x * x; };
  auto vn = [&](int k, int s, double w) { return sq(w * sobolev_norm(cb.v[k], s)); };
  auto Rn = [&](int k, int s, double w) { return sq(w * sobolev_norm(cb.R[k], s)); };
  rep.N_components = {
      {"v_H4", vn(0, 4, 1.0)},
      {"rkk_vt_H3", vn(1, 3, rk)},
      {"rkk_vtt_H2", vn(2, 2, rk)},
      {"rkk32_vttt_H1", vn(3, 1, std::pow(rk, 1.5))},
      {"R_H4", Rn(0, 4, 1.0)},
      {"Rt_H3", Rn(1, 3, 1.0)},
      {"sqrtrkk_Rtt_H2", Rn(2, 2, std::sqrt(rk))},
      {"rkk_Rttt_H1", Rn(3, 1, rk)},
      {"vt_H2", vn(1, 2, 1.0)},
      {"sqrtrkk_vtt_H1", vn(2, 1, std::sqrt(rk))},
      {"Rtt_H1", Rn(2, 1, 1.0)},
      {"E", E},
  };
  double N = 0.0;
  for (const auto& [k, v] : rep.N_components) N += v;
  rep.N_total = N;

  const auto faces = face_forms(cb);
  auto pi_dbar = [&](int k, int n, double w) {
    double s = 0.0;
    const std::vector<ScalarField> vk{cb.v[k][0], cb.v[k][1], cb.v[k][2]};
    for (const auto& mi : multi_indices(n)) s += projected_boundary_square(faces, apply_dbar(vk, mi[0], mi[1], w));
    return s;
  };
  rep.N_extended = {
      {"rkk_vttt_L2", vn(3, 0, rk)},
      {"sqrtrkk_Rttt_L2", Rn(3, 0, std::sqrt(rk))},
      {"Rtt_H1_unsquared", sobolev_norm(cb.R[2], 1)},
      {"rkk_Pi_dbar3_vt", pi_dbar(1, 3, rk)},
      {"rkk_Pi_dbar2_vtt", pi_dbar(2, 2, rk)},
      {"rkk32_Pi_dbar_vttt", pi_dbar(3, 1, std::pow(rk, 1.5))},
      {"Pi_dbar2_vt", pi_dbar(1, 2, 1.0)},
      {"sqrtrkk_Pi_dbar_vtt", pi_dbar(2, 1, std::sqrt(rk))},
  };
  return rep;
}

EnergyReport energy_report(const FlowState& s, const EosParams& p) {
  return energy_report(time_derivative_cascade(s, p, kEnergyCascadeOrder), s.t);
}

}  // namespace slabflow

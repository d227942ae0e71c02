#include "slabflow/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "slabflow/identities.hpp"
#include "slabflow/norms.hpp"

namespace slabflow {

namespace {

VectorField curl(const VectorField& psi) {
  return {partial(psi[2], 1) - partial(psi[1], 2), partial(psi[0], 2) - partial(psi[2], 0),
          partial(psi[1], 0) - partial(psi[0], 1)};
}

constexpr std::array<Face, 2> kFaces{Face::Bottom, Face::Top};
constexpr int kFirstOrderSweeps = 8;

FlowState trial_state(const VectorField& v, const ScalarField& rho0) {
  FlowState s;
  s.grid = v[0].grid();
  s.eta = identity_map(s.grid);
  s.v = v;
  s.rho0 = rho0;
  return s;
}

// q'(R) R, the coefficient linking q_t to -div v at eta = id.
ScalarField acoustic_coefficient(const ScalarField& R, const EosParams& p) {
  return eos_pressure_derivative(R, 1, p) * R;
}

// Target d3 v^3 on each face from the first-order condition q_t = H_1:
//   d3 v^3 = -H_1 / (q'(R) R) - d1 v^1 - d2 v^2.
std::array<SurfaceField, 2> first_order_target(const VectorField& v, const ScalarField& R, const EosParams& p) {
  const CascadeBundle cb = time_derivative_cascade(trial_state(v, R), p, 1);
  const ScalarField c = acoustic_coefficient(R, p);
  const ScalarField tdiv = partial(v[0], 0) + partial(v[1], 1);
  std::array<SurfaceField, 2> F;
  for (Face f : kFaces) {
    const int i = static_cast<int>(f);
    F[i] = -(cb.boundary_pressure(f)[1] / trace(c, f)) - trace(tdiv, f);
  }
  return F;
}

PolyharmonicProblem homogeneous_problem(const GridPtr& grid, int m, const std::vector<TraceOp>& ops) {
  PolyharmonicProblem pb;
  pb.m = m;
  pb.rhs = ScalarField(grid);
  for (int f = 0; f < 2; ++f) {
    pb.ops[f] = ops;
    pb.data[f].assign(m, SurfaceField(grid));
  }
  return pb;
}

}  // namespace

ScalarField divergence(const VectorField& v) {
  ScalarField d = partial(v[0], 0);
  d += partial(v[1], 1);
  d += partial(v[2], 2);
  return d;
}

VectorField divergence_free_seed(const GridPtr& grid, const std::string& profile, double amplitude,
                                 std::uint64_t seed) {
  if (profile == "zero") return make_vec<Support::Volume>(grid);
  if (profile == "single") {
    const double pi = std::numbers::pi;
    VectorField psi = make_vec<Support::Volume>(grid);
    psi[2] = ScalarField::from_function(
        grid, [&](double y1, double, double y3) { return amplitude * std::sin(2 * pi * y1) * std::sin(pi * y3); });
    return curl(psi);
  }
  if (profile == "random") {
    if (amplitude == 0.0) return make_vec<Support::Volume>(grid);
    VectorField u = curl(random_band_limited(grid, 2, 1.0, seed));
    const double s = amplitude / max_abs(u);
    for (auto& c : u) c *= s;
    return u;
  }
  throw SlabError("unknown seed profile '" + profile + "' (expected zero, single or random)");
}

FlowState initial_state(const WellPreparedData& d) {
  return trial_state(d.v0, eos_density(d.q0, d.params));
}

WellPreparedData construct(const EosParams& params, const VectorField& u0, const ConstructionOptions& opt) {
  params.validate();
  if (opt.refinement_passes < 0) throw SlabError("refinement_passes must be >= 0");
  const GridPtr& grid = u0[0].grid();
  const VectorField id = identity_map(grid);
  WellPreparedData out;
  out.params = params;
  out.u0 = u0;

  // p0: -Lap p0 = d_mu u^nu d_nu u^mu, p0 = H_0 on Gamma.
  {
    PolyharmonicProblem pb = homogeneous_problem(grid, 1, {TraceOp::Value});
    const MatrixField du = vector_gradient(u0);
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu) pb.rhs -= du[nu][mu] * du[mu][nu];
    for (Face f : kFaces) pb.data[static_cast<int>(f)][0] = boundary_pressure(id, f, params);
    out.p0 = solve_polyharmonic(pb);
  }
  const ScalarField R_p = eos_density(out.p0, params);

  // w0: w^3 = u^3 + d, Lap^2 d = 0, d = 0 and d3 w^3 = first-order target on Gamma.
  // q_t on Gamma depends on w only through its traces, but the products in the
  // cascade are taken under the grid's product policy; a few Newton sweeps on the
  // d3 data make the discrete first-order condition hold to round-off.
  {
    PolyharmonicProblem pb = homogeneous_problem(grid, 2, {TraceOp::Value, TraceOp::D3});
    const auto F = first_order_target(u0, R_p, params);
    const ScalarField d3u = partial(u0[2], 2);
    for (Face f : kFaces) pb.data[static_cast<int>(f)][1] = F[static_cast<int>(f)] - trace(d3u, f);
    const ScalarField c = acoustic_coefficient(R_p, params);
    out.w0 = u0;
    out.w0[2] += solve_polyharmonic(pb);
    for (int sweep = 0; sweep < kFirstOrderSweeps; ++sweep) {
      const CascadeBundle cb = time_derivative_cascade(trial_state(out.w0, R_p), params, 1);
      double change = 0.0, scale = 0.0;
      for (Face f : kFaces) {
        const int i = static_cast<int>(f);
        const SurfaceField delta = (trace(cb.q[1], f) - cb.boundary_pressure(f)[1]) / trace(c, f);
        pb.data[i][1] += delta;
        change = std::max(change, delta.max_abs());
        scale = std::max(scale, pb.data[i][1].max_abs());
      }
      if (change <= 1e-15 * std::max(scale, 1.0)) break;
      out.w0 = u0;
      out.w0[2] += solve_polyharmonic(pb);
    }
  }

  // q0: Lap^3 q0 = 0; value and d3 from p0; Lap q0 chosen so that q_tt = H_2.
  {
    PolyharmonicProblem pb = homogeneous_problem(grid, 3, {TraceOp::Value, TraceOp::D3, TraceOp::Lap});
    const ScalarField d3p = partial(out.p0, 2);
    const ScalarField lap_p = laplacian(out.p0);
    for (Face f : kFaces) {
      const int i = static_cast<int>(f);
      pb.data[i][0] = trace(out.p0, f);
      pb.data[i][1] = trace(d3p, f);
      pb.data[i][2] = trace(lap_p, f);
    }
    // Trial: the triharmonic field with p0's value, d3 and Lap traces.
    ScalarField q = solve_polyharmonic(pb);
    for (int pass = 0; pass <= opt.refinement_passes; ++pass) {
      const ScalarField R = eos_density(q, params);
      const CascadeBundle cb = time_derivative_cascade(trial_state(out.w0, R), params, 2);
      const ScalarField qp = eos_pressure_derivative(R, 1, params);
      for (Face f : kFaces) {
        const int i = static_cast<int>(f);
        pb.data[i][2] += (cb.boundary_pressure(f)[2] - trace(cb.q[2], f)) / trace(qp, f);
      }
      q = solve_polyharmonic(pb);
    }
    out.q0 = q;
  }
  const ScalarField R0 = eos_density(out.q0, params);

  // v0: v^3 = w^3 + d, Lap^4 d = 0 with d = 0, d3 d = 0,
  // d3^2 v^3 = d3 of that target extended off each face, and Lap d3 v^3 chosen so
  // that q_ttt = H_3 (linearized about the trial Lap d3 d = 0).
  {
    PolyharmonicProblem pb =
        homogeneous_problem(grid, 4, {TraceOp::Value, TraceOp::D3, TraceOp::D33, TraceOp::LapD3});
    const ScalarField c = acoustic_coefficient(R0, params);
    const ScalarField d33w = vertical_derivative(out.w0[2], 2);
    const ScalarField tdiv = partial(out.w0[0], 0) + partial(out.w0[1], 1);
    const ScalarField lap_bar_w =
        tangential_derivative(tangential_derivative(out.w0[2], 1), 1) +
        tangential_derivative(tangential_derivative(out.w0[2], 2), 2);
    for (Face f : kFaces) {
      const int i = static_cast<int>(f);
      // H_1 = -sigma s Lap-bar v^3 on the flat face, extended with this face's sign.
      const ScalarField F_ext = (params.sigma * face_sign(f)) * (lap_bar_w / c) - tdiv;
      // d3 d = 0 keeps the first-order condition already satisfied by w0.
      pb.data[i][2] = trace(partial(F_ext, 2), f) - trace(d33w, f);
    }
    const ScalarField qp = eos_pressure_derivative(R0, 1, params);
    const ScalarField lin = R0 * qp * qp;
    VectorField v = out.w0;
    v[2] += solve_polyharmonic(pb);
    for (int pass = 0; pass <= opt.refinement_passes; ++pass) {
      const CascadeBundle cb = time_derivative_cascade(trial_state(v, R0), params, 3);
      for (Face f : kFaces) {
        const int i = static_cast<int>(f);
        pb.data[i][3] += (trace(cb.q[3], f) - cb.boundary_pressure(f)[3]) / trace(lin, f);
      }
      v = out.w0;
      v[2] += solve_polyharmonic(pb);
    }
    out.v0 = v;
  }
  return out;
}

CompatibilityReport compatibility_residuals(const FlowState& s, const EosParams& p) {
  const CascadeBundle cb = time_derivative_cascade(s, p, 3);
  CompatibilityReport rep;
  for (int j = 0; j < 4; ++j) {
    double sq = 0.0, sup = 0.0;
    for (Face f : kFaces) {
      const SurfaceField& H = cb.boundary_pressure(f)[j];
      const SurfaceField r = trace(cb.q[j], f) - H;
      sq += integrate(r.map([](double x) { return x * x; }));
      sup = std::max(sup, r.max_abs());
      rep.H[j][static_cast<int>(f)] = H;
    }
    rep.l2[j] = std::sqrt(sq);
    rep.sup[j] = sup;
  }
  return rep;
}

CompatibilityReport compatibility_residuals(const WellPreparedData& d) {
  return compatibility_residuals(initial_state(d), d.params);
}

std::vector<UniformityRow> kappa_uniformity_report(const std::vector<EosParams>& params_list, const VectorField& u0,
                                                   const ConstructionOptions& opt) {
  std::vector<UniformityRow> rows;
  for (const EosParams& p : params_list) {
    const WellPreparedData d = construct(p, u0, opt);
    UniformityRow r;
    r.kappa = p.kappa;
    r.v0_h4 = sobolev_norm(d.v0, 4);
    r.v0_h4_boundary = boundary_norm(d.v0, 4.0);
    r.q0_h4 = sobolev_norm(d.q0, 4);
    r.q0_h4_boundary = boundary_norm(d.q0, 4.0);
    r.v0_minus_u0_c2 = ck_norm(d.v0 - d.u0, 2);
    r.div_v0_c1 = ck_norm(divergence(d.v0), 1);
    r.compat_l2 = compatibility_residuals(d).l2;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace slabflow

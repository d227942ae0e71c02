#include "slabflow/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace slabflow {

void StepperConfig::validate() const {
  if (!(cfl_number > 0.0 && cfl_number <= 1.0)) throw SlabError("cfl_number must be in (0, 1]");
  if (!(dt_min > 0.0 && dt_min <= dt_max)) throw SlabError("need 0 < dt_min <= dt_max");
  if (max_steps <= 0) throw SlabError("max_steps must be positive");
}

RhsOutput rhs(const FlowState& s, const EosParams& p) {
  CascadeBundle cb = time_derivative_cascade(s, p, 0);
  return {s.v, std::move(cb.v[1])};
}

CflBreakdown cfl_breakdown(const FlowState& s, const EosParams& p, const StepperConfig& c) {
  const Grid& g = *s.grid;
  const ScalarField R = density_from_state(s);
  double cmax = 0.0;
  for (double r : R.values()) cmax = std::max(cmax, std::sqrt(std::abs(eos_pressure_derivative(r, 1, p))));
  double vmax = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n)
    vmax = std::max(vmax, std::sqrt(s.v[0][n] * s.v[0][n] + s.v[1][n] * s.v[1][n] + s.v[2][n] * s.v[2][n]));
  const double inf = std::numeric_limits<double>::infinity();
  CflBreakdown b;
  b.acoustic = cmax > 0.0 ? g.h_min() / cmax : inf;
  const double rho_min = s.rho0.min();
  const double ht = g.h_tangential();
  b.surface = p.sigma > 0.0 ? std::sqrt(rho_min * ht * ht * ht / (p.sigma * std::pow(std::numbers::pi, 3))) : inf;
  b.advect = vmax > 0.0 ? g.h_min() / vmax : inf;
  const double raw = c.cfl_number * std::min({b.acoustic, b.surface, b.advect});
  b.dt = std::clamp(raw, c.dt_min, c.dt_max);
  return b;
}

double cfl_dt(const FlowState& s, const EosParams& p, const StepperConfig& c) { return cfl_breakdown(s, p, c).dt; }

namespace {

FlowState advance(const FlowState& s, const RhsOutput& k, double h) {
  FlowState out = s;
  for (int a = 0; a < 3; ++a) {
    out.eta[a].axpy(h, k.d_eta[a]);
    out.v[a].axpy(h, k.d_v[a]);
  }
  out.check_finite();
  return out;
}

}  // namespace

FlowState step(const FlowState& s, double dt, const EosParams& p) {
  if (!(dt > 0.0)) throw SlabError("time step must be positive");
  const RhsOutput k1 = rhs(s, p);
  const RhsOutput k2 = rhs(advance(s, k1, 0.5 * dt), p);
  const RhsOutput k3 = rhs(advance(s, k2, 0.5 * dt), p);
  const RhsOutput k4 = rhs(advance(s, k3, dt), p);
  FlowState out = s;
  for (int a = 0; a < 3; ++a) {
    out.eta[a].axpy(dt / 6.0, k1.d_eta[a]);
    out.eta[a].axpy(dt / 3.0, k2.d_eta[a]);
    out.eta[a].axpy(dt / 3.0, k3.d_eta[a]);
    out.eta[a].axpy(dt / 6.0, k4.d_eta[a]);
    out.v[a].axpy(dt / 6.0, k1.d_v[a]);
    out.v[a].axpy(dt / 3.0, k2.d_v[a]);
    out.v[a].axpy(dt / 3.0, k3.d_v[a]);
    out.v[a].axpy(dt / 6.0, k4.d_v[a]);
  }
  out.check_finite();
  out.t = s.t + dt;
  return out;
}

}  // namespace slabflow

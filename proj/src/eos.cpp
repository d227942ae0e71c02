#include "slabflow/eos.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "slabflow/spectral.hpp"

namespace slabflow {

void EosParams::validate() const {
  auto bad = [](const char* what, double v) {
    std::ostringstream os;
    os << "invalid EOS parameter " << what << " = " << v;
    throw SlabError(os.str());
  };
  if (!(kappa > 0.0) || !std::isfinite(kappa)) bad("kappa", kappa);
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) bad("gamma", gamma);
  if (!(c_gamma > 0.0) || !std::isfinite(c_gamma)) bad("c_gamma", c_gamma);
  if (!(beta > 0.0) || !std::isfinite(beta)) bad("beta", beta);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) bad("sigma", sigma);
}

namespace {

// e (e - 1) ... (e - k + 1)
double falling(double e, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= e - i;
  return r;
}

}  // namespace

double eos_pressure(double R, const EosParams& p) {
  if (!(R > 0.0)) throw SlabError("eos_pressure: density must be positive");
  return p.ck() * (std::pow(R, p.gamma) - p.beta);
}

double eos_pressure_derivative(double R, int k, const EosParams& p) {
  if (k == 0) return eos_pressure(R, p);
  if (!(R > 0.0)) throw SlabError("eos_pressure: density must be positive");
  if (p.gamma == 1.0) return k == 1 ? p.ck() : 0.0;
  return p.ck() * falling(p.gamma, k) * std::pow(R, p.gamma - k);
}

double eos_density(double q, const EosParams& p) {
  const double x = q / p.ck() + p.beta;
  if (!(x > 0.0)) throw SlabError("eos_density: pressure outside the physical range");
  return p.gamma == 1.0 ? x : std::pow(x, 1.0 / p.gamma);
}

double eos_density_derivative(double q, int k, const EosParams& p) {
  if (k == 0) return eos_density(q, p);
  const double x = q / p.ck() + p.beta;
  if (!(x > 0.0)) throw SlabError("eos_density: pressure outside the physical range");
  if (p.gamma == 1.0) return k == 1 ? 1.0 / p.ck() : 0.0;
  const double e = 1.0 / p.gamma;
  return falling(e, k) * std::pow(p.ck(), -k) * std::pow(x, e - k);
}

ScalarField eos_pressure(const ScalarField& R, const EosParams& p) {
  return R.map([&](double r) { return eos_pressure(r, p); });
}
ScalarField eos_density(const ScalarField& q, const EosParams& p) {
  return q.map([&](double x) { return eos_density(x, p); });
}
ScalarField eos_pressure_derivative(const ScalarField& R, int k, const EosParams& p) {
  return R.map([&](double r) { return eos_pressure_derivative(r, k, p); });
}
ScalarField eos_density_derivative(const ScalarField& q, int k, const EosParams& p) {
  return q.map([&](double x) { return eos_density_derivative(x, k, p); });
}

double rkk(const EosParams& p) { return std::pow(p.ck(), -1.0 / p.gamma); }

std::array<double, 2> eos_chain_rule_residuals(const ScalarField& q, const EosParams& p) {
  const ScalarField R = eos_density(q, p);
  const ScalarField R1 = eos_density_derivative(q, 1, p);
  const ScalarField R2 = eos_density_derivative(q, 2, p);
  std::array<double, 2> r{0.0, 0.0};
  for (int mu = 0; mu < 3; ++mu) {
    const ScalarField dq = partial(q, mu), dR = partial(R, mu);
    const ScalarField ddq = partial(dq, mu), ddR = partial(dR, mu);
    r[0] = std::max(r[0], (R1 * dq - dR).max_abs());
    r[1] = std::max(r[1], (R1 * ddq + R2 * (dq * dq) - ddR).max_abs());
  }
  return r;
}

EosAssumptionReport verify_eos_assumptions(const EosParams& p, double q_min, double q_max, int samples) {
  p.validate();
  if (!(q_max >= q_min) || samples < 2) throw SlabError("verify_eos_assumptions: bad q range");
  EosAssumptionReport rep;
  rep.q_min = q_min;
  rep.q_max = q_max;
  const double r = rkk(p);
  rep.c0 = 1.0;
  for (int s = 0; s < samples; ++s) {
    const double q = q_min + (q_max - q_min) * s / (samples - 1);
    const double R = eos_density(q, p);
    const double R1 = eos_density_derivative(q, 1, p);
    const double q1 = eos_pressure_derivative(R, 1, p);
    for (int k = 2; k <= 4; ++k) {
      rep.c0_density[k] = std::max(rep.c0_density[k], std::abs(eos_density_derivative(q, k, p)) / std::abs(R1));
      rep.c0_pressure[k] = std::max(rep.c0_pressure[k], std::abs(eos_pressure_derivative(R, k, p)) / std::abs(q1));
    }
    rep.c0_weight = std::max({rep.c0_weight, R1 / r, r / R1});
  }
  for (int k = 2; k <= 4; ++k) rep.c0 = std::max({rep.c0, rep.c0_density[k], rep.c0_pressure[k]});
  rep.c0 = std::max(rep.c0, rep.c0_weight);

  // Chain-rule identity on a smooth sample pressure field spanning the range.
  auto grid = Grid::create(16, 16, 17);
  const double mid = 0.5 * (q_min + q_max), half = 0.5 * (q_max - q_min);
  const double tp = 2.0 * std::numbers::pi;
  ScalarField q = ScalarField::from_function(grid, [&](double y1, double y2, double y3) {
    return mid + half * (0.5 * std::sin(tp * y1) + 0.3 * std::cos(tp * y2) * std::sin(std::numbers::pi * y3) +
                         0.2 * (2.0 * y3 * y3 - 1.0));
  });
  const auto cr = eos_chain_rule_residuals(q, p);
  rep.chain_rule_r1 = cr[0];
  rep.chain_rule_r2 = cr[1];
  return rep;
}

}  // namespace slabflow

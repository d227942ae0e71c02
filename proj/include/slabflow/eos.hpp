#pragma once

#include <array>
#include <string>
#include <vector>

#include "slabflow/field.hpp"

namespace slabflow {

/// q_kappa(R) = c_gamma kappa (R^gamma - beta), R_kappa(q) its inverse.
struct EosParams {
  double kappa = 100.0;
  double gamma = 1.0;
  double c_gamma = 1.0;  // 1/gamma makes q'(1) = kappa exact (with beta = 1)
  double beta = 1.0;
  double sigma = 1.0;

  /// Parameters with c_gamma = 1/gamma.
  static EosParams make(double kappa, double gamma = 1.0, double beta = 1.0, double sigma = 1.0) {
    return {kappa, gamma, 1.0 / gamma, beta, sigma};
  }
  double ck() const { return c_gamma * kappa; }
  void validate() const;
};

/// Highest derivative order provided by the EOS derivative helpers.
inline constexpr int kEosMaxDerivative = 6;

double eos_pressure(double R, const EosParams& p);
/// k-th derivative of q_kappa at R (k = 0 is the value).
double eos_pressure_derivative(double R, int k, const EosParams& p);
double eos_density(double q, const EosParams& p);
/// k-th derivative of R_kappa at q.
double eos_density_derivative(double q, int k, const EosParams& p);

ScalarField eos_pressure(const ScalarField& R, const EosParams& p);
ScalarField eos_density(const ScalarField& q, const EosParams& p);
ScalarField eos_pressure_derivative(const ScalarField& R, int k, const EosParams& p);
ScalarField eos_density_derivative(const ScalarField& q, int k, const EosParams& p);

/// Weight (c_gamma kappa)^(-1/gamma).
double rkk(const EosParams& p);

struct EosAssumptionReport {
  double q_min = 0.0, q_max = 0.0;
  std::array<double, 5> c0_density{};   // index k = 2..4: max |R^(k)| / |R'|
  std::array<double, 5> c0_pressure{};  // index k = 2..4: max |q^(k)| / |q'|
  double c0_weight = 0.0;               // max(R'/r, r/R') over the range
  double c0 = 0.0;                      // max of all of the above (and 1)
  double chain_rule_r1 = 0.0;           // sup |R' d q - d R| on a sample field
  double chain_rule_r2 = 0.0;           // sup |R' d^2 q + R''(dq)^2 - d^2 R|
};

EosAssumptionReport verify_eos_assumptions(const EosParams& p, double q_min, double q_max, int samples = 2001);

/// Chain-rule residuals of the density/pressure relation on the sample field q
/// (all three spatial directions).
std::array<double, 2> eos_chain_rule_residuals(const ScalarField& q, const EosParams& p);

}  // namespace slabflow

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "slabflow/cascade.hpp"

namespace slabflow {

/// Left-hand side of a wave equation and its source split into named terms.
struct WaveTerms {
  ScalarField lhs;
  std::vector<std::pair<std::string, ScalarField>> terms;
  /// || lhs - sum of terms (except `drop`) ||_0
  double residual(const std::string& drop = "") const;
  double lhs_norm() const;
  /// residual / max(||lhs||_0, ||term||_0 over terms); 0 when all vanish.
  double relative_residual(const std::string& drop = "") const;
};

/// J R' d_t^{r+1} q - a^{na} A^{ma} d_n d_m d_t^{r-1} q  versus its source, r = 1..3.
/// Terms: "JR'", "rho0", "A", "a", "dA". Needs cascade order r + 1 in ClosureOnly mode.
WaveTerms wave_equation_terms(const CascadeBundle& cb, int r);

/// Weighted patterns D^3 = rkk d_t^3 (0), rkk^1/2 dbar d_t^2 (1), dbar^2 d_t (2).
inline constexpr int kWeightedWavePatterns = 3;
/// Terms: "[D3dt,JR']", "[D3,rho0]dt", "rho0", "[D3,A]", "[D3,rho0]v", "[D3dt,a]", "dA".
/// `tangential` selects the d-bar multi-index (a1, a2) of the pattern.
WaveTerms weighted_wave_terms(const CascadeBundle& cb, int pattern, std::array<int, 2> tangential);

/// max over r of the residual of each wave equation; cascade computed internally.
double wave_residual(const FlowState& s, const EosParams& p, int r);
/// max over the tangential multi-indices of the pattern.
double weighted_wave_residual(const CascadeBundle& cb, int pattern, const std::string& drop = "");
double weighted_wave_residual(const FlowState& s, const EosParams& p, int pattern);
double weighted_wave_relative_residual(const CascadeBundle& cb, int pattern, const std::string& drop = "");

/// max over k = 0..K of sup | d_t^k (R J - rho0) |, each relative to sup |R_k| sup |J|.
double continuity_residual(const CascadeBundle& cb);
/// sup | a^{mu alpha} d_mu v_alpha + R' d_t q / R |.
double divergence_expression_residual(const CascadeBundle& cb);
/// sup | R_t - R' q_t | and sup | R_tt - R' q_tt - R'' q_t^2 |.
std::array<double, 2> eos_time_chain_residuals(const CascadeBundle& cb);

/// Snapshot sequence of one trajectory (ascending t).
/// LHS eps d_b v^m d_c eta_m at the last snapshot minus its initial value and the
/// trapezoid integral of eps a^{lm} d_l q d_c eta_m d_b R / R^2; sup norm.
double cauchy_invariance_residual(const std::vector<FlowState>& snapshots, const EosParams& p);
/// The trapezoid time integral alone (for quadrature refinement studies).
VectorField cauchy_baroclinic_integral(const std::vector<FlowState>& snapshots, const EosParams& p);

struct ResidualReport {
  double cauchy = -1.0;  // negative when not evaluated
  std::array<double, 3> wave{};
  std::array<double, 3> weighted_wave{};
  std::array<double, 3> wave_relative{};
  std::array<double, 3> weighted_wave_relative{};
  double continuity = 0.0;
  double divergence_expression = 0.0;
};

/// Every residual that depends on a single state (cauchy left unevaluated).
ResidualReport residual_report(const FlowState& s, const EosParams& p);

}  // namespace slabflow

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "slabflow/cascade.hpp"
#include "slabflow/polyharmonic.hpp"

namespace slabflow {

/// u = curl Psi for a smooth potential Psi.
///   "zero"   : u = 0
///   "single" : Psi = amplitude * (0, 0, sin(2 pi y1) sin(pi y3))
///   "random" : band-limited Psi, rescaled so that sup |u| = amplitude
VectorField divergence_free_seed(const GridPtr& grid, const std::string& profile, double amplitude,
                                 std::uint64_t seed = 1);

struct WellPreparedData {
  VectorField u0, v0, w0;
  ScalarField q0, p0;
  EosParams params;
};

struct ConstructionOptions {
  /// Extra correction passes on the q0 and v0 boundary data, each re-evaluating
  /// the compatibility mismatch on the current iterate. 0 = single staged pass.
  int refinement_passes = 0;
};

/// Staged construction u0 -> p0 -> w0 -> q0 -> v0 with eta0 = id. Boundary data
/// for each stage comes from the cascade evaluated on the previous stage.
WellPreparedData construct(const EosParams& params, const VectorField& u0, const ConstructionOptions& opt = {});

/// Initial state (eta = id, v0, rho0 = R(q0)).
FlowState initial_state(const WellPreparedData& d);

struct CompatibilityReport {
  std::array<double, 4> l2{};   // || d_t^j q - H_j ||_{L2(Gamma)}, both faces
  std::array<double, 4> sup{};
  std::array<std::array<SurfaceField, 2>, 4> H;  // H[j][face]
};

/// Residuals of the compatibility conditions of order 0..3 at t = 0.
CompatibilityReport compatibility_residuals(const FlowState& s, const EosParams& p);
CompatibilityReport compatibility_residuals(const WellPreparedData& d);

struct UniformityRow {
  double kappa = 0.0;
  double v0_h4 = 0.0, v0_h4_boundary = 0.0, q0_h4 = 0.0, q0_h4_boundary = 0.0;
  double v0_minus_u0_c2 = 0.0;
  double div_v0_c1 = 0.0;
  std::array<double, 4> compat_l2{};
};

/// Builds data for each parameter set and reports its kappa-sensitive norms.
std::vector<UniformityRow> kappa_uniformity_report(const std::vector<EosParams>& params_list, const VectorField& u0,
                                                   const ConstructionOptions& opt = {});

/// div v = sum_mu d_mu v^mu.
ScalarField divergence(const VectorField& v);

}  // namespace slabflow

#pragma once

#include "slabflow/eos.hpp"
#include "slabflow/geometry.hpp"

namespace slabflow {

struct FlowState {
  GridPtr grid;
  VectorField eta;
  VectorField v;
  ScalarField rho0;
  double t = 0.0;

  /// eta = id, v = 0, rho0 = R_kappa(q0 = 0).
  static FlowState at_rest(const GridPtr& grid, const EosParams& p);
  void check_finite() const;
};

/// R = rho0 / J (throws on degeneracy).
ScalarField density_from_state(const FlowState& s);
/// q = q_kappa(rho0 / J); shares the density code path.
ScalarField pressure_from_state(const FlowState& s, const EosParams& p);

}  // namespace slabflow

#include "slabflow/state.hpp"

#include "slabflow/identities.hpp"

namespace slabflow {

FlowState FlowState::at_rest(const GridPtr& grid, const EosParams& p) {
  FlowState s;
  s.grid = grid;
  s.eta = identity_map(grid);
  s.v = make_vec<Support::Volume>(grid);
  s.rho0 = ScalarField(grid, eos_density(0.0, p));
  return s;
}

void FlowState::check_finite() const {
  for (int c = 0; c < 3; ++c)
    if (!eta[c].all_finite() || !v[c].all_finite()) throw NonFiniteError("non-finite value in flow state");
  if (!rho0.all_finite()) throw NonFiniteError("non-finite reference density");
}

ScalarField density_from_state(const FlowState& s) {
  const FlowMapGeometry fm = flow_map_geometry(s.eta);
  return s.rho0 / fm.J;
}

ScalarField pressure_from_state(const FlowState& s, const EosParams& p) {
  return eos_pressure(density_from_state(s), p);
}

}  // namespace slabflow

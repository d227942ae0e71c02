#pragma once

#include "slabflow/cascade.hpp"

namespace slabflow {

struct RhsOutput {
  VectorField d_eta;  // = v
  VectorField d_v;    // = -rho0^{-1} A^{mu alpha} d_mu q (boundary-trace pressure)
};

struct StepperConfig {
  double cfl_number = 0.5;
  double dt_min = 1e-9;
  double dt_max = 1e-2;
  long max_steps = 1000000;
  void validate() const;
};

RhsOutput rhs(const FlowState& s, const EosParams& p);

struct CflBreakdown {
  double acoustic, surface, advect, dt;
};
CflBreakdown cfl_breakdown(const FlowState& s, const EosParams& p, const StepperConfig& c);
double cfl_dt(const FlowState& s, const EosParams& p, const StepperConfig& c);

/// Classical RK4. Throws NonFiniteError / DegeneracyError if any stage fails.
FlowState step(const FlowState& s, double dt, const EosParams& p);

}  // namespace slabflow

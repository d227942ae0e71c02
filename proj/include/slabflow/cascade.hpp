#pragma once

#include <array>
#include <vector>

#include "slabflow/jets.hpp"
#include "slabflow/state.hpp"

namespace slabflow {

/// How the pressure entering the momentum equation is built.
enum class TraceMode {
  BoundaryPressure,  // boundary planes of q replaced by the surface-tension trace
  ClosureOnly,       // plain EOS closure everywhere (used by wave-equation residuals)
};

/// Exact time derivatives of the state at one instant, generated recursively
/// from the equations (no differencing in time). With order K:
///   q, R, J, A, a, G, q_tilde, q_gamma : k = 0..K
///   v, eta                             : k = 0..K+1
struct CascadeBundle {
  int order = 0;
  EosParams params;
  TraceMode mode = TraceMode::BoundaryPressure;
  ScalarField rho0;

  std::vector<VectorField> eta, v;
  std::vector<MatrixField> G;  // G[k][alpha][mu] = d_mu d_t^k eta^alpha
  std::vector<MatrixField> A, a;
  std::vector<ScalarField> J, R, q;
  std::vector<ScalarField> q_tilde;                    // pressure used in the momentum equation
  std::array<std::vector<SurfaceField>, 2> q_gamma;    // indexed by Face

  const std::vector<SurfaceField>& boundary_pressure(Face f) const { return q_gamma[static_cast<int>(f)]; }
};

/// Maximum supported cascade order.
inline constexpr int kMaxCascadeOrder = 5;

CascadeBundle time_derivative_cascade(const FlowState& s, const EosParams& p, int max_order,
                                      TraceMode mode = TraceMode::BoundaryPressure);

/// Surface-tension pressure trace q = -sigma g^{ij} n.d-bar^2_ij eta on one face.
SurfaceField boundary_pressure(const VectorField& eta, Face face, const EosParams& p);

/// -rho0^{-1} sum_i C(k,i) A_i^{mu alpha} d_mu qt_{k-i}; the momentum-equation
/// time derivative shared by the right-hand side and the cascade.
VectorField momentum_derivative(const ScalarField& rho0, const std::vector<MatrixField>& A,
                                const std::vector<ScalarField>& q_tilde, int k);

}  // namespace slabflow

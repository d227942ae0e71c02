#pragma once

#include <array>

#include "slabflow/spectral.hpp"

namespace slabflow {

/// eta = id.
VectorField identity_map(const GridPtr& grid);

/// G[alpha][mu] = d eta^alpha / d y^mu. The tangential components of eta are
/// periodic only after removing the identity, which is handled here.
MatrixField deformation_gradient(const VectorField& eta);

/// Gradient of a periodic vector field (no identity part), same layout as above.
MatrixField vector_gradient(const VectorField& v);

/// Cofactor matrix from the bilinear cross-product formula. Row mu is the
/// reference index: A[0] = d2 eta x d3 eta, A[1] = d3 eta x d1 eta, A[2] = d1 eta x d2 eta.
MatrixField cofactor(const MatrixField& G);

struct FlowMapGeometry {
  MatrixField G;  // G[alpha][mu] = d_mu eta^alpha
  MatrixField A;  // A[mu][alpha]
  MatrixField a;  // a = A / J
  ScalarField J;
  double piola_residual = 0.0;
};

/// Throws DegeneracyError when min J <= 0.
FlowMapGeometry flow_map_geometry(const VectorField& eta);

/// max_alpha || d_mu A^{mu alpha} ||_inf
double piola_residual(const MatrixField& A);

using Surface2 = std::array<std::array<SurfaceField, 2>, 2>;

struct BoundaryGeometry {
  Face face = Face::Top;
  std::array<SurfaceVector, 2> t;      // tangent vectors d-bar_i eta
  std::array<std::array<SurfaceVector, 2>, 2> tt;  // d-bar^2_ij eta
  Surface2 g, g_inv;
  SurfaceField sqrt_g;
  SurfaceVector m;      // t1 x t2
  SurfaceVector n_hat;  // outward unit normal of the deformed face
  SurfaceMatrix Pi;     // Pi^alpha_beta = delta - g^{kl} t_k^alpha t_l^beta
  SurfaceVector lap_g_eta;
  SurfaceField mean_curv;  // H = -n_hat . lap_g eta
};

/// Geometry of one deformed face. flip_normal reverses n_hat (negative control only).
BoundaryGeometry boundary_geometry(const VectorField& eta, Face face, bool flip_normal = false);
BoundaryGeometry boundary_geometry(const MatrixField& G, Face face, bool flip_normal = false);

}  // namespace slabflow

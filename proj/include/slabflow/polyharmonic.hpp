#pragma once

#include <array>
#include <vector>

#include "slabflow/spectral.hpp"

namespace slabflow {

/// Boundary trace operators available to polyharmonic problems.
enum class TraceOp { Value, D3, D33, Lap, LapD3 };

/// Delta^m u = rhs on the slab with m trace conditions on each face.
struct PolyharmonicProblem {
  int m = 1;
  ScalarField rhs;
  std::array<std::vector<TraceOp>, 2> ops;         // indexed by Face
  std::array<std::vector<SurfaceField>, 2> data;   // same shape as ops
};

/// Per tangential Fourier mode: m cascaded Dirichlet Helmholtz solves for a
/// particular solution, then a 2m x 2m correction over the homogeneous basis
/// {y^j e^{-|k|y}, (1-y)^j e^{-|k|(1-y)}} (polynomials for k = 0).
/// Throws SlabError naming the mode if the correction system is singular.
ScalarField solve_polyharmonic(const PolyharmonicProblem& problem);

/// Applies a trace operator to a volume field and restricts it to a face.
SurfaceField apply_trace(const ScalarField& u, TraceOp op, Face face);

/// Full Laplacian d1^2 + d2^2 + d3^2.
ScalarField laplacian(const ScalarField& u);

}  // namespace slabflow

#pragma once

#include "slabflow/spectral.hpp"

namespace slabflow {

/// Largest interior Sobolev index supported by sobolev_norm.
inline constexpr int kMaxSobolevIndex = 4;

double l2_norm(const ScalarField& f);
double l2_norm(const SurfaceField& f);

/// ||f||_s^2 = sum over multi-indices |alpha| <= s of ||d^alpha f||_0^2.
double sobolev_norm(const ScalarField& f, int s);
double sobolev_norm(const VectorField& f, int s);

/// Fourier-multiplier norm on T^2: sum (1 + |2 pi k|^2)^s |f_k|^2, any real s.
double boundary_norm(const SurfaceField& f, double s);
/// Both faces combined in quadrature.
double boundary_norm(const ScalarField& f, double s);
double boundary_norm(const VectorField& f, double s);

/// max over |alpha| <= k of sup |d^alpha f|.
double ck_norm(const ScalarField& f, int k);
double ck_norm(const VectorField& f, int k);

}  // namespace slabflow

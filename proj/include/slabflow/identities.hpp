#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "slabflow/geometry.hpp"

namespace slabflow {

/// Smooth band-limited vector field: tangential modes |k|_inf <= max_mode with
/// weights exp(-1.5|k|^2), cubic polynomial vertical profiles, scaled so the sup
/// norm of its gradient equals amplitude. Measuring amplitude as strain (rather
/// than displacement) keeps nonlinear geometric quantities resolved at n = 16.
VectorField random_band_limited(const GridPtr& grid, int max_mode, double amplitude, std::uint64_t seed);

/// identity + random_band_limited(...)
VectorField random_flow_map(const GridPtr& grid, int max_mode, double amplitude, std::uint64_t seed);

struct IdentityReport {
  std::map<std::string, double> residuals;  // sup-norm mismatches
  std::map<std::string, double> info;       // diagnostics that are not pass/fail
  double max_residual() const;
};

struct IdentityOptions {
  double sigma = 1.0;          // used by the boundary-condition forms
  bool flip_normal = false;    // negative control: reverse the surface-side normal
};

IdentityReport verify_identities(const VectorField& eta, const VectorField& v, const IdentityOptions& opt = {});

}  // namespace slabflow

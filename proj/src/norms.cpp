#include "slabflow/norms.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace slabflow {

double l2_norm(const ScalarField& f) { return std::sqrt(integrate(f.map([](double x) { return x * x; }))); }
double l2_norm(const SurfaceField& f) { return std::sqrt(integrate(f.map([](double x) { return x * x; }))); }

namespace {

// Calls fn(d^alpha f) for every multi-index with |alpha| <= s (each visited once).
template <class Fn>
void for_each_derivative(const ScalarField& f, int s, Fn fn) {
  if (s < 0 || s > kMaxSobolevIndex) throw SlabError("unsupported Sobolev index " + std::to_string(s));
  ScalarField d3 = f;
  for (int a3 = 0; a3 <= s; ++a3) {
    ScalarField d1 = d3;
    for (int a1 = 0; a1 + a3 <= s; ++a1) {
      ScalarField d2 = d1;
      for (int a2 = 0; a1 + a2 + a3 <= s; ++a2) {
        fn(d2);
        if (a1 + a2 + a3 < s) d2 = tangential_derivative(d2, 2);
      }
      if (a1 + a3 < s) d1 = tangential_derivative(d1, 1);
    }
    if (a3 < s) d3 = vertical_derivative(d3, 1);
  }
}

}  // namespace

double sobolev_norm(const ScalarField& f, int s) {
  double sum = 0.0;
  for_each_derivative(f, s, [&](const ScalarField& d) { sum += integrate(d.map([](double x) { return x * x; })); });
  return std::sqrt(sum);
}

double sobolev_norm(const VectorField& f, int s) {
  double sum = 0.0;
  for (const auto& c : f) sum += std::pow(sobolev_norm(c, s), 2);
  return std::sqrt(sum);
}

double boundary_norm(const SurfaceField& f, double s) {
  const Grid& g = *f.grid();
  const auto spec = plane_spectra(f.data(), g, 1);
  const int h = g.n1() / 2 + 1;
  const double tp = 2.0 * std::numbers::pi;
  double sum = 0.0;
  for (int k2 = 0; k2 < g.n2(); ++k2)
    for (int k1 = 0; k1 < h; ++k1) {
      const double f1 = k1, f2 = signed_mode(k2, g.n2());
      const double w = std::pow(1.0 + tp * tp * (f1 * f1 + f2 * f2), s);
      // conjugate-symmetric partner counted for 0 < k1 < n1/2
      const double mult = (k1 == 0 || 2 * k1 == g.n1()) ? 1.0 : 2.0;
      sum += mult * w * std::norm(spec[static_cast<std::size_t>(k2) * h + k1]);
    }
  return std::sqrt(sum);
}

double boundary_norm(const ScalarField& f, double s) {
  return std::hypot(boundary_norm(trace(f, Face::Bottom), s), boundary_norm(trace(f, Face::Top), s));
}

double boundary_norm(const VectorField& f, double s) {
  double sum = 0.0;
  for (const auto& c : f) sum += std::pow(boundary_norm(c, s), 2);
  return std::sqrt(sum);
}

double ck_norm(const ScalarField& f, int k) {
  double m = 0.0;
  for_each_derivative(f, k, [&](const ScalarField& d) { m = std::max(m, d.max_abs()); });
  return m;
}

double ck_norm(const VectorField& f, int k) {
  double m = 0.0;
  for (const auto& c : f) m = std::max(m, ck_norm(c, k));
  return m;
}

}  // namespace slabflow

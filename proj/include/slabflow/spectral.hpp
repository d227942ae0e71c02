#pragma once

#include <complex>
#include <vector>

#include "slabflow/field.hpp"

namespace slabflow {

using cplx = std::complex<double>;

namespace detail {

/// FFTW plans for one horizontal plane on the base (n1 x n2) and the 3/2-padded
/// grid. Plans are created once; execution uses the new-array interface, which
/// is thread-safe, with per-call buffers.
class PlaneTransforms {
 public:
  PlaneTransforms(int n1, int n2);
  ~PlaneTransforms();
  PlaneTransforms(const PlaneTransforms&) = delete;
  PlaneTransforms& operator=(const PlaneTransforms&) = delete;

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int m1() const { return m1_; }
  int m2() const { return m2_; }
  /// Half-spectrum row length n1/2 + 1; spectrum index is k2 * half() + k1.
  int half() const { return n1_ / 2 + 1; }
  int half_padded() const { return m1_ / 2 + 1; }
  std::size_t spectrum_size() const { return static_cast<std::size_t>(n2_) * half(); }

  /// Normalized forward transform: out holds Fourier coefficients.
  void forward(const double* in, cplx* out) const;
  /// Inverse synthesis from coefficients (input untouched).
  void inverse(const cplx* in, double* out) const;

  /// out = truncate(pad(a) * pad(b)) on one plane.
  void dealiased_product(const double* a, const double* b, double* out) const;

 private:
  int n1_, n2_, m1_, m2_;
  void* fwd_ = nullptr;
  void* inv_ = nullptr;
  void* fwd_pad_ = nullptr;
  void* inv_pad_ = nullptr;
};

}  // namespace detail

/// Signed integer frequency of FFT index k on n points (Nyquist reported as +n/2).
inline int signed_mode(int k, int n) { return k <= n / 2 ? k : k - n; }

/// Fourier coefficients of each horizontal plane (planes stacked).
std::vector<cplx> plane_spectra(const double* data, const Grid& grid, int planes);
void synthesize_planes(const std::vector<cplx>& spec, const Grid& grid, int planes, double* out);

/// Tangential derivative in direction dir in {1, 2} (exact for band-limited data).
template <Support S>
Field<S> tangential_derivative(const Field<S>& f, int dir);

/// Vertical derivative of order 1 or 2 by Chebyshev collocation.
ScalarField vertical_derivative(const ScalarField& f, int order = 1);

/// d/dy_mu with mu in {0, 1, 2} (0, 1 tangential, 2 vertical).
ScalarField partial(const ScalarField& f, int mu);

/// Value of f on the face y3 = 0 (Bottom) or y3 = 1 (Top).
SurfaceField trace(const ScalarField& f, Face face);
SurfaceVector trace(const VectorField& f, Face face);
void set_trace(ScalarField& f, Face face, const SurfaceField& value);

/// Volume field constant in y3 equal to s.
ScalarField extend_vertically(const SurfaceField& s);

/// Integral over the slab (Clenshaw-Curtis x trapezoid) and over one face.
double integrate(const ScalarField& f);
double integrate(const SurfaceField& f);

}  // namespace slabflow

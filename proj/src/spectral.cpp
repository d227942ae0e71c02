#include "slabflow/spectral.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <mutex>
#include <numbers>

namespace slabflow {

namespace detail {

namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

}  // namespace

PlaneTransforms::PlaneTransforms(int n1, int n2)
    : n1_(n1), n2_(n2), m1_((3 * n1 + 1) / 2), m2_((3 * n2 + 1) / 2) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  std::vector<double> r(static_cast<std::size_t>(m1_) * m2_);
  std::vector<fftw_complex> c(static_cast<std::size_t>(m2_) * (m1_ / 2 + 1));
  fwd_ = fftw_plan_dft_r2c_2d(n2_, n1_, r.data(), c.data(), kFlags);
  inv_ = fftw_plan_dft_c2r_2d(n2_, n1_, c.data(), r.data(), kFlags);
  fwd_pad_ = fftw_plan_dft_r2c_2d(m2_, m1_, r.data(), c.data(), kFlags);
  inv_pad_ = fftw_plan_dft_c2r_2d(m2_, m1_, c.data(), r.data(), kFlags);
  if (!fwd_ || !inv_ || !fwd_pad_ || !inv_pad_) throw SlabError("FFTW plan creation failed");
}

PlaneTransforms::~PlaneTransforms() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  for (void* p : {fwd_, inv_, fwd_pad_, inv_pad_})
    if (p) fftw_destroy_plan(static_cast<fftw_plan>(p));
}

void PlaneTransforms::forward(const double* in, cplx* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  const double s = 1.0 / (static_cast<double>(n1_) * n2_);
  for (std::size_t n = 0; n < spectrum_size(); ++n) out[n] *= s;
}

void PlaneTransforms::inverse(const cplx* in, double* out) const {
  std::vector<cplx> tmp(in, in + spectrum_size());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_), reinterpret_cast<fftw_complex*>(tmp.data()), out);
}

void PlaneTransforms::dealiased_product(const double* a, const double* b, double* out) const {
  const int h = half(), hp = half_padded();
  const std::size_t np = static_cast<std::size_t>(m1_) * m2_;
  std::vector<cplx> sa(spectrum_size()), sb(spectrum_size());
  forward(a, sa.data());
  forward(b, sb.data());

  // Embed the non-Nyquist modes into the padded spectrum.
  std::vector<cplx> pa(static_cast<std::size_t>(m2_) * hp), pb(pa.size());
  for (int k2 = 0; k2 < n2_; ++k2) {
    const int f2 = signed_mode(k2, n2_);
    if (2 * std::abs(f2) >= n2_) continue;
    const int K2 = f2 >= 0 ? f2 : f2 + m2_;
    for (int k1 = 0; 2 * k1 < n1_; ++k1) {
      pa[static_cast<std::size_t>(K2) * hp + k1] = sa[static_cast<std::size_t>(k2) * h + k1];
      pb[static_cast<std::size_t>(K2) * hp + k1] = sb[static_cast<std::size_t>(k2) * h + k1];
    }
  }
  std::vector<double> ra(np), rb(np);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_pad_), reinterpret_cast<fftw_complex*>(pa.data()), ra.data());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_pad_), reinterpret_cast<fftw_complex*>(pb.data()), rb.data());
  for (std::size_t n = 0; n < np; ++n) ra[n] *= rb[n];
  fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_pad_), ra.data(), reinterpret_cast<fftw_complex*>(pa.data()));

  const double s = 1.0 / static_cast<double>(np);
  std::fill(sa.begin(), sa.end(), cplx{});
  for (int k2 = 0; k2 < n2_; ++k2) {
    const int f2 = signed_mode(k2, n2_);
    if (2 * std::abs(f2) >= n2_) continue;
    const int K2 = f2 >= 0 ? f2 : f2 + m2_;
    for (int k1 = 0; 2 * k1 < n1_; ++k1)
      sa[static_cast<std::size_t>(k2) * h + k1] = s * pa[static_cast<std::size_t>(K2) * hp + k1];
  }
  inverse(sa.data(), out);
}

void product_planes(const Grid& grid, const double* a, const double* b, double* out, int planes) {
  const std::size_t ps = grid.plane_size();
  if (!grid.dealias()) {
    for (std::size_t n = 0; n < ps * planes; ++n) out[n] = a[n] * b[n];
    return;
  }
  for (int k = 0; k < planes; ++k)
    grid.transforms().dealiased_product(a + k * ps, b + k * ps, out + k * ps);
}

}  // namespace detail

std::vector<cplx> plane_spectra(const double* data, const Grid& grid, int planes) {
  const auto& tr = grid.transforms();
  const std::size_t ss = tr.spectrum_size(), ps = grid.plane_size();
  std::vector<cplx> out(ss * planes);
  for (int k = 0; k < planes; ++k) tr.forward(data + k * ps, out.data() + k * ss);
  return out;
}

void synthesize_planes(const std::vector<cplx>& spec, const Grid& grid, int planes, double* out) {
  const auto& tr = grid.transforms();
  const std::size_t ss = tr.spectrum_size(), ps = grid.plane_size();
  for (int k = 0; k < planes; ++k) tr.inverse(spec.data() + k * ss, out + k * ps);
}

template <Support S>
Field<S> tangential_derivative(const Field<S>& f, int dir) {
  if (dir != 1 && dir != 2) throw SlabError("tangential direction must be 1 or 2");
  const Grid& g = *f.grid();
  const int n1 = g.n1(), n2 = g.n2(), h = n1 / 2 + 1;
  auto spec = plane_spectra(f.data(), g, f.planes());
  const std::size_t ss = static_cast<std::size_t>(n2) * h;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < f.planes(); ++k)
    for (int k2 = 0; k2 < n2; ++k2)
      for (int k1 = 0; k1 < h; ++k1) {
        cplx& c = spec[k * ss + static_cast<std::size_t>(k2) * h + k1];
        int m = dir == 1 ? k1 : signed_mode(k2, n2);
        const int n = dir == 1 ? n1 : n2;
        if (2 * std::abs(m) == n) m = 0;
        c *= cplx(0.0, two_pi * m);
      }
  Field<S> out(f.grid());
  synthesize_planes(spec, g, f.planes(), out.data());
  return out;
}

template ScalarField tangential_derivative(const ScalarField&, int);
template SurfaceField tangential_derivative(const SurfaceField&, int);

ScalarField vertical_derivative(const ScalarField& f, int order) {
  if (order != 1 && order != 2) throw SlabError("vertical derivative order must be 1 or 2");
  const Grid& g = *f.grid();
  const Eigen::Index n3 = g.n3(), ps = static_cast<Eigen::Index>(g.plane_size());
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> D((order == 1 ? g.d3() : g.d3sq()).data(), n3, n3);
  Eigen::Map<const Eigen::MatrixXd> F(f.data(), ps, n3);
  ScalarField out(f.grid());
  Eigen::Map<Eigen::MatrixXd> O(out.data(), ps, n3);
  O.noalias() = F * D.transpose();
  return out;
}

ScalarField partial(const ScalarField& f, int mu) {
  if (mu == 2) return vertical_derivative(f, 1);
  return tangential_derivative(f, mu + 1);
}

SurfaceField trace(const ScalarField& f, Face face) {
  const Grid& g = *f.grid();
  SurfaceField s(f.grid());
  const std::size_t off = face == Face::Top ? (g.n3() - 1) * g.plane_size() : 0;
  std::copy(f.data() + off, f.data() + off + g.plane_size(), s.data());
  return s;
}

SurfaceVector trace(const VectorField& f, Face face) {
  return {trace(f[0], face), trace(f[1], face), trace(f[2], face)};
}

void set_trace(ScalarField& f, Face face, const SurfaceField& value) {
  const Grid& g = *f.grid();
  const std::size_t off = face == Face::Top ? (g.n3() - 1) * g.plane_size() : 0;
  std::copy(value.data(), value.data() + g.plane_size(), f.data() + off);
}

ScalarField extend_vertically(const SurfaceField& s) {
  const Grid& g = *s.grid();
  ScalarField f(s.grid());
  for (int k = 0; k < g.n3(); ++k)
    std::copy(s.data(), s.data() + g.plane_size(), f.data() + k * g.plane_size());
  return f;
}

double integrate(const ScalarField& f) {
  const Grid& g = *f.grid();
  const auto& w = g.cc_weights();
  const std::size_t ps = g.plane_size();
  double total = 0.0;
  for (int k = 0; k < g.n3(); ++k) {
    double plane = 0.0;
    for (std::size_t p = 0; p < ps; ++p) plane += f[k * ps + p];
    total += w[k] * plane;
  }
  return total / static_cast<double>(ps);
}

double integrate(const SurfaceField& f) {
  double s = 0.0;
  for (double x : f.values()) s += x;
  return s / static_cast<double>(f.size());
}

}  // namespace slabflow

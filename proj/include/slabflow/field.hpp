#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "slabflow/grid.hpp"

namespace slabflow {

enum class Support { Volume, Surface };

namespace detail {
// Product of two plane stacks under the grid's product policy (3/2-rule
// dealiased in the periodic directions when the grid asks for it, pointwise
// otherwise).
void product_planes(const Grid& grid, const double* a, const double* b, double* out, int planes);
}  // namespace detail

/// Real values on the slab nodes (Volume) or on one horizontal face (Surface).
template <Support S>
class Field {
 public:
  Field() = default;
  explicit Field(GridPtr grid, double value = 0.0)
      : grid_(std::move(grid)), values_(count(*grid_), value) {}

  static Field from_function(GridPtr grid, const std::function<double(double, double, double)>& fn,
                             double y3_surface = 0.0) {
    Field f(grid);
    const Grid& g = *f.grid_;
    for (int k = 0; k < f.planes(); ++k) {
      const double z = S == Support::Volume ? g.y3(k) : y3_surface;
      for (int j = 0; j < g.n2(); ++j)
        for (int i = 0; i < g.n1(); ++i) f.at(i, j, k) = fn(g.y1(i), g.y2(j), z);
    }
    return f;
  }

  const GridPtr& grid() const { return grid_; }
  bool empty() const { return !grid_; }
  int planes() const { return S == Support::Volume ? grid_->n3() : 1; }
  std::size_t size() const { return values_.size(); }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](std::size_t n) { return values_[n]; }
  double operator[](std::size_t n) const { return values_[n]; }

  double& at(int i, int j, int k = 0) { return values_[index(i, j, k)]; }
  double at(int i, int j, int k = 0) const { return values_[index(i, j, k)]; }

  Field& operator+=(const Field& o) {
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += o.values_[n];
    return *this;
  }
  Field& operator-=(const Field& o) {
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= o.values_[n];
    return *this;
  }
  Field& operator*=(double s) {
    for (double& x : values_) x *= s;
    return *this;
  }
  Field& operator+=(double s) {
    for (double& x : values_) x += s;
    return *this;
  }

  /// a += s * x
  Field& axpy(double s, const Field& x) {
    for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += s * x.values_[n];
    return *this;
  }

  template <class Fn>
  Field map(Fn fn) const {
    Field out(grid_);
    for (std::size_t n = 0; n < values_.size(); ++n) out.values_[n] = fn(values_[n]);
    return out;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator-(Field a) { return a *= -1.0; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator+(Field a, double s) { return a += s; }

  /// Field product under the grid's product policy.
  friend Field operator*(const Field& a, const Field& b) {
    Field out(a.grid_);
    detail::product_planes(*a.grid_, a.data(), b.data(), out.data(), a.planes());
    return out;
  }

  /// Pointwise quotient (never dealiased).
  friend Field operator/(const Field& a, const Field& b) {
    Field out(a.grid_);
    for (std::size_t n = 0; n < a.values_.size(); ++n) out.values_[n] = a.values_[n] / b.values_[n];
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
  }
  double min() const {
    double m = values_.front();
    for (double x : values_) m = std::min(m, x);
    return m;
  }
  double max() const {
    double m = values_.front();
    for (double x : values_) m = std::max(m, x);
    return m;
  }
  bool all_finite() const {
    for (double x : values_)
      if (!std::isfinite(x)) return false;
    return true;
  }

 private:
  static std::size_t count(const Grid& g) {
    return S == Support::Volume ? g.size() : g.plane_size();
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * grid_->n2() + j) * grid_->n1() + i;
  }

  GridPtr grid_;
  std::vector<double> values_;
};

using ScalarField = Field<Support::Volume>;
using SurfaceField = Field<Support::Surface>;

template <Support S>
using Vec3 = std::array<Field<S>, 3>;
template <Support S>
using Mat3 = std::array<std::array<Field<S>, 3>, 3>;

using VectorField = Vec3<Support::Volume>;
using MatrixField = Mat3<Support::Volume>;
using SurfaceVector = Vec3<Support::Surface>;
using SurfaceMatrix = Mat3<Support::Surface>;

template <Support S>
Vec3<S> make_vec(const GridPtr& g, double value = 0.0) {
  return {Field<S>(g, value), Field<S>(g, value), Field<S>(g, value)};
}

template <Support S>
Mat3<S> make_mat(const GridPtr& g, double value = 0.0) {
  Mat3<S> m;
  for (auto& row : m)
    for (auto& e : row) e = Field<S>(g, value);
  return m;
}

template <Support S>
Field<S> dot(const Vec3<S>& a, const Vec3<S>& b) {
  Field<S> out = a[0] * b[0];
  out += a[1] * b[1];
  out += a[2] * b[2];
  return out;
}

template <Support S>
Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <Support S>
Vec3<S> operator+(Vec3<S> a, const Vec3<S>& b) {
  for (int c = 0; c < 3; ++c) a[c] += b[c];
  return a;
}

template <Support S>
Vec3<S> operator-(Vec3<S> a, const Vec3<S>& b) {
  for (int c = 0; c < 3; ++c) a[c] -= b[c];
  return a;
}

template <Support S>
Vec3<S> operator*(double s, Vec3<S> a) {
  for (auto& c : a) c *= s;
  return a;
}

template <Support S>
Vec3<S> scale(const Field<S>& f, const Vec3<S>& a) {
  return {f * a[0], f * a[1], f * a[2]};
}

template <Support S>
double max_abs(const Vec3<S>& a) {
  return std::max({a[0].max_abs(), a[1].max_abs(), a[2].max_abs()});
}

template <Support S>
double max_abs(const Mat3<S>& m) {
  double r = 0.0;
  for (const auto& row : m)
    for (const auto& e : row) r = std::max(r, e.max_abs());
  return r;
}

}  // namespace slabflow

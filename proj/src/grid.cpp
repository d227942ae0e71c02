#include "slabflow/grid.hpp"

#include <cmath>
#include <numbers>

#include "slabflow/spectral.hpp"

namespace slabflow {

namespace {

// Chebyshev differentiation matrix on x_j = cos(pi j / N), row-major.
std::vector<double> cheb_matrix(int n) {
  const int N = n - 1;
  std::vector<double> x(n), c(n, 1.0), D(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) x[j] = std::cos(std::numbers::pi * j / N);
  c[0] = c[N] = 2.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      const double d = (c[i] / c[j]) * sgn / (x[i] - x[j]);
      D[i * n + j] = d;
      row += d;
    }
    D[i * n + i] = -row;  // negative-sum trick keeps D * const = 0 exactly
  }
  return D;
}

// Clenshaw-Curtis weights on [-1, 1] for x_j = cos(pi j / N).
std::vector<double> clenshaw_curtis(int n) {
  const int N = n - 1;
  std::vector<double> w(n, 0.0);
  std::vector<double> v(N - 1, 1.0);
  auto theta = [&](int j) { return std::numbers::pi * j / N; };
  if (N % 2 == 0) {
    w[0] = w[N] = 1.0 / (static_cast<double>(N) * N - 1.0);
    for (int k = 1; k < N / 2; ++k)
      for (int j = 1; j < N; ++j) v[j - 1] -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
    for (int j = 1; j < N; ++j) v[j - 1] -= std::cos(N * theta(j)) / (static_cast<double>(N) * N - 1.0);
  } else {
    w[0] = w[N] = 1.0 / (static_cast<double>(N) * N);
    for (int k = 1; k <= (N - 1) / 2; ++k)
      for (int j = 1; j < N; ++j) v[j - 1] -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
  }
  for (int j = 1; j < N; ++j) w[j] = 2.0 * v[j - 1] / N;
  return w;
}

}  // namespace

std::vector<double> cgl_nodes_unit(int n) {
  std::vector<double> y(n);
  const int N = n - 1;
  for (int j = 0; j < n; ++j) y[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * j / N));
  y[0] = 0.0;
  y[N] = 1.0;
  if (n % 2 == 1) y[N / 2] = 0.5;
  // enforce exact mirror symmetry about 1/2
  for (int j = 0; j < n / 2; ++j) y[N - j] = 1.0 - y[j];
  return y;
}

Grid::Grid(int n1, int n2, int n3, bool dealias) : n1_(n1), n2_(n2), n3_(n3), dealias_(dealias) {
  nodes_y3_ = cgl_nodes_unit(n3);
  // y = (1 - x) / 2, so d/dy = -2 d/dx with the same node order.
  d3_ = cheb_matrix(n3);
  for (double& d : d3_) d *= -2.0;
  d3sq_.assign(d3_.size(), 0.0);
  for (int i = 0; i < n3; ++i)
    for (int l = 0; l < n3; ++l) {
      const double dil = d3_[i * n3 + l];
      for (int j = 0; j < n3; ++j) d3sq_[i * n3 + j] += dil * d3_[l * n3 + j];
    }
  cc_weights_ = clenshaw_curtis(n3);
  for (double& w : cc_weights_) w *= 0.5;
  transforms_ = std::make_unique<detail::PlaneTransforms>(n1, n2);
}

Grid::~Grid() = default;

std::shared_ptr<const Grid> Grid::create(int n1, int n2, int n3, bool dealias) {
  if (n1 < 4 || n2 < 4 || n1 % 2 != 0 || n2 % 2 != 0)
    throw SlabError("tangential sizes n1, n2 must be even and >= 4");
  if (n3 < 5 || n3 % 2 == 0) throw SlabError("n3 must be odd and >= 5");
  return std::shared_ptr<const Grid>(new Grid(n1, n2, n3, dealias));
}

double Grid::h_min() const { return std::min(h_tangential(), nodes_y3_[1] - nodes_y3_[0]); }

}  // namespace slabflow

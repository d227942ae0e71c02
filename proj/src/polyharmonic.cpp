#include "slabflow/polyharmonic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>


namespace slabflow {

namespace {

using Eigen::MatrixXd;

// Homogeneous basis function c (0 <= c < 2m) at y: y^j e^{-k y} for c < m,
// (1-y)^j e^{-k(1-y)} otherwise; plain monomials y^c when k = 0.
double basis_value(int c, int m, double k, double y) {
  if (k == 0.0) return std::pow(y, c);
  if (c < m) return std::pow(y, c) * std::exp(-k * y);
  const double z = 1.0 - y;
  return std::pow(z, c - m) * std::exp(-k * z);
}

template <class T>
T apply_op(TraceOp op, const std::array<T, 4>& d, double k2) {
  switch (op) {
    case TraceOp::Value: return d[0];
    case TraceOp::D3: return d[1];
    case TraceOp::D33: return d[2];
    case TraceOp::Lap: return d[2] - k2 * d[0];
    case TraceOp::LapD3: return d[3] - k2 * d[1];
  }
  return d[0];
}

}  // namespace

ScalarField laplacian(const ScalarField& u) {
  ScalarField out = vertical_derivative(u, 2);
  out += tangential_derivative(tangential_derivative(u, 1), 1);
  out += tangential_derivative(tangential_derivative(u, 2), 2);
  return out;
}

SurfaceField apply_trace(const ScalarField& u, TraceOp op, Face face) {
  switch (op) {
    case TraceOp::Value: return trace(u, face);
    case TraceOp::D3: return trace(vertical_derivative(u, 1), face);
    case TraceOp::D33: return trace(vertical_derivative(u, 2), face);
    case TraceOp::Lap: return trace(laplacian(u), face);
    case TraceOp::LapD3: return trace(laplacian(vertical_derivative(u, 1)), face);
  }
  throw SlabError("unknown trace operator");
}

ScalarField solve_polyharmonic(const PolyharmonicProblem& pb) {
  const int m = pb.m;
  if (m < 1 || m > 4) throw SlabError("polyharmonic order must be in 1..4");
  for (int f = 0; f < 2; ++f)
    if (static_cast<int>(pb.ops[f].size()) != m || static_cast<int>(pb.data[f].size()) != m)
      throw SlabError("polyharmonic problem needs exactly m trace conditions per face");

  const GridPtr& grid = pb.rhs.grid();
  const Grid& g = *grid;
  const int n1 = g.n1(), n2 = g.n2(), n3 = g.n3(), h = n1 / 2 + 1, N = n3 - 1;
  const std::size_t ss = static_cast<std::size_t>(n2) * h;

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> D(g.d3().data(), n3, n3);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> D2(g.d3sq().data(), n3, n3);
  const MatrixXd D3 = D * D2;
  // Endpoint rows of the differentiation operators, for the particular-solution traces.
  std::array<std::array<Eigen::RowVectorXd, 4>, 2> rows;
  for (int f = 0; f < 2; ++f) {
    const int r = f == 0 ? 0 : N;
    rows[f][0] = Eigen::RowVectorXd::Zero(n3);
    rows[f][0](r) = 1.0;
    rows[f][1] = D.row(r);
    rows[f][2] = D2.row(r);
    rows[f][3] = D3.row(r);
  }

  const auto f_hat = plane_spectra(pb.rhs.data(), g, n3);
  std::array<std::vector<std::vector<cplx>>, 2> t_hat;
  for (int f = 0; f < 2; ++f)
    for (int i = 0; i < m; ++i) t_hat[f].push_back(plane_spectra(pb.data[f][i].data(), g, 1));

  std::map<double, Eigen::PartialPivLU<MatrixXd>> helmholtz;
  auto helmholtz_lu = [&](double k2) -> const Eigen::PartialPivLU<MatrixXd>& {
    auto it = helmholtz.find(k2);
    if (it != helmholtz.end()) return it->second;
    MatrixXd H = D2 - k2 * MatrixXd::Identity(n3, n3);
    H.row(0).setZero();
    H.row(N).setZero();
    H(0, 0) = 1.0;
    H(N, N) = 1.0;
    return helmholtz.emplace(k2, Eigen::PartialPivLU<MatrixXd>(H)).first->second;
  };

  const auto& y = g.nodes_y3();
  std::vector<cplx> u_hat(ss * n3, cplx{});
  const double tp = 2.0 * std::numbers::pi;

  for (int k2i = 0; k2i < n2; ++k2i)
    for (int k1 = 0; k1 < h; ++k1) {
      const int f1 = k1, f2 = signed_mode(k2i, n2);
      if (2 * f1 == n1 || 2 * std::abs(f2) == n2) continue;  // Nyquist modes stay zero
      const std::size_t mode = static_cast<std::size_t>(k2i) * h + k1;
      const double kk2 = tp * tp * (double(f1) * f1 + double(f2) * f2);
      const double k = std::sqrt(kk2);

      // particular solution: m cascaded Dirichlet Helmholtz solves (real, imag columns)
      MatrixXd u(n3, 2);
      for (int j = 0; j < n3; ++j) {
        u(j, 0) = f_hat[j * ss + mode].real();
        u(j, 1) = f_hat[j * ss + mode].imag();
      }
      const auto& lu = helmholtz_lu(kk2);
      for (int s = 0; s < m; ++s) {
        u.row(0).setZero();
        u.row(N).setZero();
        u = lu.solve(u);
      }

      // Homogeneous basis sampled at the nodes. Its traces are taken with the
      // same collocation rows as the particular solution, so the trace
      // conditions hold exactly for the discrete derivative operators.
      MatrixXd phi(n3, 2 * m);
      for (int j = 0; j < n3; ++j)
        for (int cc = 0; cc < 2 * m; ++cc) phi(j, cc) = basis_value(cc, m, k, y[j]);

      // 2m x 2m correction system
      MatrixXd M(2 * m, 2 * m), b(2 * m, 2);
      for (int f = 0; f < 2; ++f) {
        std::array<Eigen::RowVectorXd, 4> bd;
        for (int n = 0; n < 4; ++n) bd[n] = rows[f][n] * phi;
        std::array<Eigen::RowVector2d, 4> pd;
        for (int n = 0; n < 4; ++n) pd[n] = rows[f][n] * u;
        for (int i = 0; i < m; ++i) {
          const int r = f * m + i;
          const TraceOp op = pb.ops[f][i];
          M.row(r) = apply_op(op, bd, kk2);
          const Eigen::RowVector2d up = apply_op(op, pd, kk2);
          const cplx tv = t_hat[f][i][mode];
          b(r, 0) = tv.real() - up(0);
          b(r, 1) = tv.imag() - up(1);
        }
      }
      Eigen::FullPivLU<MatrixXd> clu(M);
      if (!clu.isInvertible()) {
        std::ostringstream os;
        os << "singular polyharmonic correction system at mode (" << f1 << ", " << f2 << ")";
        throw SlabError(os.str());
      }
      const MatrixXd c = clu.solve(b);
      u += phi * c;
      for (int j = 0; j < n3; ++j) u_hat[j * ss + mode] = {u(j, 0), u(j, 1)};
    }

  ScalarField out(grid);
  synthesize_planes(u_hat, g, n3, out.data());
  return out;
}

}  // namespace slabflow

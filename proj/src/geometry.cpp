#include "slabflow/geometry.hpp"

#include <cmath>
#include <sstream>

namespace slabflow {

VectorField identity_map(const GridPtr& grid) {
  VectorField id;
  for (int c = 0; c < 3; ++c)
    id[c] = ScalarField::from_function(grid, [c](double y1, double y2, double y3) {
      return c == 0 ? y1 : (c == 1 ? y2 : y3);
    });
  return id;
}

MatrixField deformation_gradient(const VectorField& eta) {
  const GridPtr& g = eta[0].grid();
  const VectorField id = identity_map(g);
  MatrixField G;
  for (int al = 0; al < 3; ++al) {
    // eta^alpha - y^alpha is periodic in y^alpha; differentiating the
    // displacement also makes G = I exactly for eta = id.
    const ScalarField disp = eta[al] - id[al];
    for (int mu = 0; mu < 3; ++mu) {
      G[al][mu] = partial(al == mu ? disp : eta[al], mu);
      if (al == mu) G[al][mu] += 1.0;
    }
  }
  return G;
}

MatrixField vector_gradient(const VectorField& v) {
  MatrixField G;
  for (int al = 0; al < 3; ++al)
    for (int mu = 0; mu < 3; ++mu) G[al][mu] = partial(v[al], mu);
  return G;
}

namespace {
VectorField column(const MatrixField& G, int mu) { return {G[0][mu], G[1][mu], G[2][mu]}; }
}  // namespace

MatrixField cofactor(const MatrixField& G) {
  const VectorField c0 = column(G, 0), c1 = column(G, 1), c2 = column(G, 2);
  const VectorField r0 = cross(c1, c2), r1 = cross(c2, c0), r2 = cross(c0, c1);
  return {r0, r1, r2};
}

double piola_residual(const MatrixField& A) {
  double r = 0.0;
  for (int al = 0; al < 3; ++al) {
    ScalarField div = partial(A[0][al], 0);
    div += partial(A[1][al], 1);
    div += partial(A[2][al], 2);
    r = std::max(r, div.max_abs());
  }
  return r;
}

FlowMapGeometry flow_map_geometry(const VectorField& eta) {
  FlowMapGeometry fm;
  fm.G = deformation_gradient(eta);
  fm.A = cofactor(fm.G);
  fm.J = dot(column(fm.G, 0), VectorField{fm.A[0][0], fm.A[0][1], fm.A[0][2]});
  if (!fm.J.all_finite()) throw NonFiniteError("non-finite Jacobian");
  if (fm.J.min() <= 0.0) {
    std::ostringstream os;
    os << "flow map degenerate: min J = " << fm.J.min();
    throw DegeneracyError(os.str());
  }
  for (int mu = 0; mu < 3; ++mu)
    for (int al = 0; al < 3; ++al) fm.a[mu][al] = fm.A[mu][al] / fm.J;
  fm.piola_residual = piola_residual(fm.A);
  return fm;
}

BoundaryGeometry boundary_geometry(const VectorField& eta, Face face, bool flip_normal) {
  return boundary_geometry(deformation_gradient(eta), face, flip_normal);
}

BoundaryGeometry boundary_geometry(const MatrixField& G, Face face, bool flip_normal) {
  BoundaryGeometry b;
  b.face = face;
  const GridPtr& grid = G[0][0].grid();
  for (int i = 0; i < 2; ++i)
    for (int al = 0; al < 3; ++al) b.t[i][al] = trace(G[al][i], face);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int al = 0; al < 3; ++al) b.tt[i][j][al] = tangential_derivative(b.t[j][al], i + 1);

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) b.g[i][j] = dot(b.t[i], b.t[j]);
  const SurfaceField det = b.g[0][0] * b.g[1][1] - b.g[0][1] * b.g[1][0];
  if (det.min() <= 0.0) throw DegeneracyError("boundary metric degenerate (det g <= 0)");
  b.g_inv[0][0] = b.g[1][1] / det;
  b.g_inv[1][1] = b.g[0][0] / det;
  b.g_inv[0][1] = -b.g[0][1] / det;
  b.g_inv[1][0] = b.g_inv[0][1];
  b.sqrt_g = det.map([](double x) { return std::sqrt(x); });

  b.m = cross(b.t[0], b.t[1]);
  const SurfaceField mn = dot(b.m, b.m).map([](double x) { return std::sqrt(x); });
  const double s = face_sign(face) * (flip_normal ? -1.0 : 1.0);
  for (int al = 0; al < 3; ++al) b.n_hat[al] = s * (b.m[al] / mn);

  b.Pi = make_mat<Support::Surface>(grid);
  for (int al = 0; al < 3; ++al)
    for (int be = 0; be < 3; ++be) {
      SurfaceField p(grid, al == be ? 1.0 : 0.0);
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) p -= b.g_inv[k][l] * (b.t[k][al] * b.t[l][be]);
      b.Pi[al][be] = p;
    }

  // Divergence form: (1/sqrt g) d-bar_i (sqrt g g^{ij} d-bar_j eta)
  Surface2 w;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) w[i][j] = b.sqrt_g * b.g_inv[i][j];
  for (int al = 0; al < 3; ++al) {
    SurfaceField acc(grid);
    for (int i = 0; i < 2; ++i) {
      SurfaceField flux = w[i][0] * b.t[0][al];
      flux += w[i][1] * b.t[1][al];
      acc += tangential_derivative(flux, i + 1);
    }
    b.lap_g_eta[al] = acc / b.sqrt_g;
  }
  b.mean_curv = -dot(b.n_hat, b.lap_g_eta);
  return b;
}

}  // namespace slabflow

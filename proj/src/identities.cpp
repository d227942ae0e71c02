#include "slabflow/identities.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

namespace slabflow {

namespace {

template <Support S>
double sup_diff(const Vec3<S>& a, const Vec3<S>& b) {
  return max_abs(a - b);
}

double sup_diff(const SurfaceMatrix& a, const SurfaceMatrix& b) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, (a[i][j] - b[i][j]).max_abs());
  return r;
}

void record(IdentityReport& rep, const std::string& name, double value) {
  auto [it, inserted] = rep.residuals.emplace(name, value);
  if (!inserted) it->second = std::max(it->second, value);
}

}  // namespace

double IdentityReport::max_residual() const {
  double r = 0.0;
  for (const auto& [k, v] : residuals) r = std::max(r, v);
  return r;
}

VectorField random_band_limited(const GridPtr& grid, int max_mode, double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr int kDegree = 3;
  // Strong spectral decay keeps the geometry (1/det g, |m|, ...) resolved at
  // 16 tangential modes; see random_band_limited in the header.
  constexpr double kDecay = 1.5;
  const double two_pi = 2.0 * std::numbers::pi;
  VectorField out = make_vec<Support::Volume>(grid);
  if (amplitude == 0.0) return out;
  for (int c = 0; c < 3; ++c) {
    struct Term {
      int k1, k2, d;
      double a, b;
    };
    std::vector<Term> terms;
    for (int k1 = -max_mode; k1 <= max_mode; ++k1)
      for (int k2 = -max_mode; k2 <= max_mode; ++k2) {
        const double w = std::exp(-kDecay * (k1 * k1 + k2 * k2));
        for (int d = 0; d <= kDegree; ++d) terms.push_back({k1, k2, d, w * normal(rng), w * normal(rng)});
      }
    ScalarField& f = out[c];
    for (int k = 0; k < grid->n3(); ++k)
      for (int j = 0; j < grid->n2(); ++j)
        for (int i = 0; i < grid->n1(); ++i) {
          const double y1 = grid->y1(i), y2 = grid->y2(j), y3 = grid->y3(k);
          double s = 0.0;
          for (const Term& t : terms) {
            const double ph = two_pi * (t.k1 * y1 + t.k2 * y2);
            s += std::pow(y3, t.d) * (t.a * std::cos(ph) + t.b * std::sin(ph));
          }
          f.at(i, j, k) = s;
        }
  }
  // Normalize by the sup of the gradient (the strain of eta = id + out).
  double strain = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int mu = 0; mu < 3; ++mu) strain = std::max(strain, partial(out[c], mu).max_abs());
  for (auto& f : out) f *= amplitude / strain;
  return out;
}

VectorField random_flow_map(const GridPtr& grid, int max_mode, double amplitude, std::uint64_t seed) {
  return identity_map(grid) + random_band_limited(grid, max_mode, amplitude, seed);
}

IdentityReport verify_identities(const VectorField& eta, const VectorField& v, const IdentityOptions& opt) {
  IdentityReport rep;
  const GridPtr& grid = eta[0].grid();
  const FlowMapGeometry fm = flow_map_geometry(eta);
  const MatrixField Gv = vector_gradient(v);

  record(rep, "piola", fm.piola_residual);

  // A from the cofactor formula vs J times a pointwise matrix inverse.
  {
    double r = 0.0;
    for (std::size_t p = 0; p < grid->size(); ++p) {
      Eigen::Matrix3d M;
      for (int al = 0; al < 3; ++al)
        for (int mu = 0; mu < 3; ++mu) M(al, mu) = fm.G[al][mu][p];
      const double det = M.determinant();
      const Eigen::Matrix3d inv = M.inverse();  // inv(mu, alpha) = a^{mu alpha}
      for (int mu = 0; mu < 3; ++mu)
        for (int al = 0; al < 3; ++al) r = std::max(r, std::abs(fm.A[mu][al][p] - det * inv(mu, al)));
      r = std::max(r, std::abs(fm.J[p] - det));
    }
    record(rep, "A_equals_Ja", r);
  }

  for (Face face : {Face::Bottom, Face::Top}) {
    const double s = face_sign(face);
    const BoundaryGeometry b = boundary_geometry(fm.G, face, opt.flip_normal);
    const char* tag = face == Face::Top ? "top" : "bottom";

    // -lap_g eta = H n
    {
      SurfaceVector r;
      for (int al = 0; al < 3; ++al) r[al] = b.lap_g_eta[al] + b.mean_curv * b.n_hat[al];
      record(rep, "laplacian_normal", max_abs(r));
    }

    // from the volume inverse matrix a
    SurfaceVector aN;
    for (int al = 0; al < 3; ++al) aN[al] = s * trace(fm.a[2][al], face);
    const SurfaceField aN_norm = dot(aN, aN).map([](double x) { return std::sqrt(x); });
    {
      SurfaceVector n2;
      for (int al = 0; al < 3; ++al) n2[al] = aN[al] / aN_norm;
      record(rep, "normal_from_cofactor", sup_diff(b.n_hat, n2));
      const SurfaceField orient = dot(aN, b.n_hat);
      rep.info[std::string("orientation_") + tag] = orient.min() > 0 ? 1.0 : (orient.max() < 0 ? -1.0 : 0.0);
    }
    {
      const SurfaceField Jt = trace(fm.J, face);
      SurfaceField lhs(grid);
      for (std::size_t p = 0; p < lhs.size(); ++p) lhs[p] = Jt[p] * aN_norm[p];
      record(rep, "sqrt_g_from_cofactor", (lhs - b.sqrt_g).max_abs());
    }

    // Pi = n n
    SurfaceMatrix nn;
    for (int al = 0; al < 3; ++al)
      for (int be = 0; be < 3; ++be) nn[al][be] = b.n_hat[al] * b.n_hat[be];
    record(rep, "projection_nn", sup_diff(b.Pi, nn));

    // Pi Pi = Pi
    {
      SurfaceMatrix pp = make_mat<Support::Surface>(grid);
      for (int al = 0; al < 3; ++al)
        for (int be = 0; be < 3; ++be)
          for (int la = 0; la < 3; ++la) pp[al][be] += b.Pi[al][la] * b.Pi[la][be];
      record(rep, "projection_idempotent", sup_diff(pp, b.Pi));
    }

    // n_tau Pi^tau_alpha = n_alpha
    {
      SurfaceVector np = make_vec<Support::Surface>(grid);
      for (int al = 0; al < 3; ++al)
        for (int ta = 0; ta < 3; ++ta) np[al] += b.n_hat[ta] * b.Pi[ta][al];
      record(rep, "normal_projection", sup_diff(np, b.n_hat));
    }

    // g^{ij} d-bar^2_ij eta, used by the Laplacian projection and the boundary forms
    SurfaceVector gtt = make_vec<Support::Surface>(grid);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int al = 0; al < 3; ++al) gtt[al] += b.g_inv[i][j] * b.tt[i][j][al];

    // sqrt g lap_g eta = sqrt g g^{ij} Pi d-bar^2 eta
    {
      SurfaceVector lhs, rhs = make_vec<Support::Surface>(grid);
      for (int al = 0; al < 3; ++al) {
        lhs[al] = b.sqrt_g * b.lap_g_eta[al];
        for (int mu = 0; mu < 3; ++mu) rhs[al] += b.sqrt_g * (b.Pi[al][mu] * gtt[mu]);
      }
      record(rep, "laplacian_projection", sup_diff(lhs, rhs));
    }

    // tangential derivatives of v on the face
    std::array<SurfaceVector, 2> vb;
    for (int k = 0; k < 2; ++k)
      for (int al = 0; al < 3; ++al) vb[k][al] = trace(Gv[al][k], face);

    // d_t n. Direct side: n = s' m/|m| with m_t = v1 x t2 + t1 x v2.
    {
      const SurfaceVector mdot = cross(vb[0], b.t[1]) + cross(b.t[0], vb[1]);
      const SurfaceField mm = dot(b.m, b.m);
      const SurfaceField mnorm = mm.map([](double x) { return std::sqrt(x); });
      const SurfaceField mmd = dot(b.m, mdot);
      const double sp = s * (opt.flip_normal ? -1.0 : 1.0);
      SurfaceVector direct, formula = make_vec<Support::Surface>(grid);
      for (int al = 0; al < 3; ++al) {
        direct[al] = sp * (mdot[al] / mnorm - (b.m[al] * mmd) / (mm * mnorm));
      }
      for (int k = 0; k < 2; ++k) {
        const SurfaceField vn = dot(vb[k], b.n_hat);
        for (int l = 0; l < 2; ++l)
          for (int al = 0; al < 3; ++al) formula[al] -= b.g_inv[k][l] * (vn * b.t[l][al]);
      }
      record(rep, "dt_normal", sup_diff(direct, formula));
    }

    // d-bar_i n (spectral derivative vs formula)
    {
      double r = 0.0;
      for (int i = 0; i < 2; ++i) {
        SurfaceVector direct, formula = make_vec<Support::Surface>(grid);
        for (int al = 0; al < 3; ++al) direct[al] = tangential_derivative(b.n_hat[al], i + 1);
        for (int k = 0; k < 2; ++k) {
          const SurfaceField tn = dot(b.tt[i][k], b.n_hat);
          for (int l = 0; l < 2; ++l)
            for (int al = 0; al < 3; ++al) formula[al] -= b.g_inv[k][l] * (tn * b.t[l][al]);
        }
        r = std::max(r, sup_diff(direct, formula));
      }
      record(rep, "dbar_normal", r);
    }

    // d-bar_i (sqrt g g^{ik})
    {
      double r = 0.0;
      for (int k = 0; k < 2; ++k) {
        SurfaceField direct(grid), formula(grid);
        for (int i = 0; i < 2; ++i) direct += tangential_derivative(b.sqrt_g * b.g_inv[i][k], i + 1);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l)
              formula -= b.sqrt_g * (b.g_inv[i][j] * (b.g_inv[k][l] * dot(b.tt[i][j], b.t[l])));
        r = std::max(r, (direct - formula).max_abs());
      }
      record(rep, "dbar_sqrtg_ginv", r);
    }

    // d_t (sqrt g g^{ij}). Direct side differentiates sqrt g = |m| and the
    // explicit 2x2 inverse; the formula side is only valid symmetrized in (i, j).
    {
      Surface2 gd;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) gd[k][l] = dot(vb[k], b.t[l]) + dot(b.t[k], vb[l]);
      const SurfaceVector mdot = cross(vb[0], b.t[1]) + cross(b.t[0], vb[1]);
      const SurfaceField sg_dot = dot(b.m, mdot) / b.sqrt_g;
      const SurfaceField det = b.sqrt_g * b.sqrt_g;
      const SurfaceField det_dot = gd[0][0] * b.g[1][1] + b.g[0][0] * gd[1][1] - 2.0 * (b.g[0][1] * gd[0][1]);
      Surface2 adj{{{b.g[1][1], -b.g[0][1]}, {-b.g[0][1], b.g[0][0]}}};
      Surface2 adj_dot{{{gd[1][1], -gd[0][1]}, {-gd[0][1], gd[0][0]}}};
      Surface2 vt;  // d-bar_k v . d-bar_l eta
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) vt[k][l] = dot(vb[k], b.t[l]);
      double r_sym = 0.0, r_raw = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const SurfaceField ginv_dot = adj_dot[i][j] / det - (adj[i][j] * det_dot) / (det * det);
          const SurfaceField direct = sg_dot * b.g_inv[i][j] + b.sqrt_g * ginv_dot;
          SurfaceField sym(grid), raw(grid);
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
              const SurfaceField c1 = b.g_inv[i][j] * b.g_inv[k][l];
              raw += b.sqrt_g * ((c1 - 2.0 * (b.g_inv[l][j] * b.g_inv[i][k])) * vt[k][l]);
              sym += b.sqrt_g * ((c1 - b.g_inv[l][j] * b.g_inv[i][k] - b.g_inv[l][i] * b.g_inv[j][k]) * vt[k][l]);
            }
          r_sym = std::max(r_sym, (direct - sym).max_abs());
          r_raw = std::max(r_raw, (direct - raw).max_abs());
        }
      record(rep, "dt_sqrtg_ginv", r_sym);
      auto& raw_info = rep.info["dt_sqrtg_ginv_unsymmetrized"];
      raw_info = std::max(raw_info, r_raw);
    }

    // Boundary-condition forms with q taken from the cofactor form (sigma given).
    {
      const double sigma = opt.sigma;
      const SurfaceField q3 = -sigma * dot(b.n_hat, gtt);
      SurfaceVector AN;  // A^{mu alpha} N_mu
      for (int al = 0; al < 3; ++al) AN[al] = s * trace(fm.A[2][al], face);
      // cofactor form: both expressions of q agree
      const SurfaceField A3n = dot(AN, b.n_hat);
      const SurfaceField q3a = -sigma * (b.sqrt_g * dot(b.n_hat, gtt)) / A3n;
      record(rep, "bc_cofactor_trace_form", (q3a - q3).max_abs());
      // projected form
      SurfaceVector f2 = make_vec<Support::Surface>(grid), f1 = make_vec<Support::Surface>(grid);
      for (int al = 0; al < 3; ++al) {
        for (int mu = 0; mu < 3; ++mu) f2[al] += b.sqrt_g * (b.Pi[al][mu] * gtt[mu]);
        f2[al] += (1.0 / sigma) * (AN[al] * q3);
      }
      record(rep, "bc_projected_form", max_abs(f2));
      // Christoffel form (tangential part removed explicitly)
      for (int al = 0; al < 3; ++al) {
        f1[al] = b.sqrt_g * gtt[al];
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
              for (int l = 0; l < 2; ++l)
                f1[al] -= b.sqrt_g * (b.g_inv[i][j] * (b.g_inv[k][l] * (b.t[k][al] * dot(b.t[l], b.tt[i][j]))));
        f1[al] += (1.0 / sigma) * (AN[al] * q3);
      }
      record(rep, "bc_christoffel_form", max_abs(f1));
      // q from the cofactor form equals sigma * H
      record(rep, "bc_sigma_H", (q3 - sigma * b.mean_curv).max_abs());
    }
  }
  return rep;
}

}  // namespace slabflow

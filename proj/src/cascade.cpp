#include "slabflow/cascade.hpp"

#include <cmath>
#include <sstream>

namespace slabflow {

namespace {

VectorField column(const MatrixField& G, int mu) { return {G[0][mu], G[1][mu], G[2][mu]}; }

// d_t^k (x cross y) from the jets of x and y.
template <Support S>
Vec3<S> leibniz_cross(const std::vector<Vec3<S>>& x, const std::vector<Vec3<S>>& y, int k) {
  Vec3<S> out = cross(x[0], y[k]);
  for (int i = 1; i <= k; ++i) {
    Vec3<S> term = cross(x[i], y[k - i]);
    const double c = binomial(k, i);
    for (int a = 0; a < 3; ++a) out[a].axpy(c, term[a]);
  }
  return out;
}

template <Support S>
Field<S> leibniz_dot(const std::vector<Vec3<S>>& x, const std::vector<Vec3<S>>& y, int k) {
  Field<S> out = dot(x[0], y[k]);
  for (int i = 1; i <= k; ++i) out.axpy(binomial(k, i), dot(x[i], y[k - i]));
  return out;
}

template <Support S>
Field<S> leibniz(const std::vector<Field<S>>& x, const std::vector<Field<S>>& y, int k) {
  Field<S> out = x[0] * y[k];
  for (int i = 1; i <= k; ++i) out.axpy(binomial(k, i), x[i] * y[k - i]);
  return out;
}

// Surface jets for the boundary pressure on one face:
//   q_gamma = -sigma s P G^{-3/2},  P = g22 (m.e11) - 2 g12 (m.e12) + g11 (m.e22),
//   m = t1 x t2, G = |m|^2 = det g.
struct FaceJets {
  Face face = Face::Top;
  std::array<std::vector<SurfaceVector>, 2> t;
  std::vector<SurfaceVector> e11, e12, e22, m;
  std::vector<SurfaceField> g11, g12, g22, me11, me12, me22, P, Gd, h, q;

  void push(const MatrixField& Gk, const EosParams& p) {
    const int k = static_cast<int>(m.size());
    SurfaceVector t1, t2;
    for (int a = 0; a < 3; ++a) {
      t1[a] = trace(Gk[a][0], face);
      t2[a] = trace(Gk[a][1], face);
    }
    SurfaceVector d11, d12, d22;
    for (int a = 0; a < 3; ++a) {
      d11[a] = tangential_derivative(t1[a], 1);
      d12[a] = tangential_derivative(t2[a], 1);
      d22[a] = tangential_derivative(t2[a], 2);
    }
    t[0].push_back(std::move(t1));
    t[1].push_back(std::move(t2));
    e11.push_back(std::move(d11));
    e12.push_back(std::move(d12));
    e22.push_back(std::move(d22));
    m.push_back(leibniz_cross(t[0], t[1], k));
    g11.push_back(leibniz_dot(t[0], t[0], k));
    g12.push_back(leibniz_dot(t[0], t[1], k));
    g22.push_back(leibniz_dot(t[1], t[1], k));
    me11.push_back(leibniz_dot(m, e11, k));
    me12.push_back(leibniz_dot(m, e12, k));
    me22.push_back(leibniz_dot(m, e22, k));
    SurfaceField Pk = leibniz(g22, me11, k);
    Pk.axpy(-2.0, leibniz(g12, me12, k));
    Pk += leibniz(g11, me22, k);
    P.push_back(std::move(Pk));
    Gd.push_back(leibniz_dot(m, m, k));
    if (k == 0) {
      if (Gd[0].min() <= 0.0) throw DegeneracyError("boundary metric degenerate (det g <= 0)");
      h.push_back(Gd[0].map([](double x) { return std::pow(x, -1.5); }));
    } else {
      // derivatives of x^{-3/2} at G
      std::vector<SurfaceField> fd(k + 1);
      double c = 1.0, e = -1.5;
      for (int j = 1; j <= k; ++j) {
        c *= e;
        e -= 1.0;
        const double cj = c, ej = e;
        fd[j] = Gd[0].map([cj, ej](double x) { return cj * std::pow(x, ej); });
      }
      h.push_back(faa_di_bruno(fd, Gd, k));
    }
    q.push_back((-p.sigma * face_sign(face)) * leibniz(P, h, k));
  }
};

}  // namespace

VectorField momentum_derivative(const ScalarField& rho0, const std::vector<MatrixField>& A,
                                const std::vector<ScalarField>& q_tilde, int k) {
  const GridPtr& grid = rho0.grid();
  VectorField acc = make_vec<Support::Volume>(grid);
  for (int i = 0; i <= k; ++i) {
    const double c = binomial(k, i);
    const ScalarField& qk = q_tilde[k - i];
    const std::array<ScalarField, 3> dq{partial(qk, 0), partial(qk, 1), partial(qk, 2)};
    for (int al = 0; al < 3; ++al)
      for (int mu = 0; mu < 3; ++mu) acc[al].axpy(c, A[i][mu][al] * dq[mu]);
  }
  for (int al = 0; al < 3; ++al) acc[al] = -acc[al] / rho0;
  return acc;
}

SurfaceField boundary_pressure(const VectorField& eta, Face face, const EosParams& p) {
  FaceJets fj;
  fj.face = face;
  fj.push(deformation_gradient(eta), p);
  return fj.q[0];
}

CascadeBundle time_derivative_cascade(const FlowState& s, const EosParams& p, int max_order, TraceMode mode) {
  if (max_order < 0 || max_order > kMaxCascadeOrder) {
    std::ostringstream os;
    os << "cascade order " << max_order << " outside [0, " << kMaxCascadeOrder << "]";
    throw SlabError(os.str());
  }
  const GridPtr& grid = s.grid;
  CascadeBundle cb;
  cb.order = max_order;
  cb.params = p;
  cb.mode = mode;
  cb.rho0 = s.rho0;
  cb.eta.push_back(s.eta);
  cb.v.push_back(s.v);

  std::array<FaceJets, 2> faces;
  faces[0].face = Face::Bottom;
  faces[1].face = Face::Top;

  std::vector<std::vector<VectorField>> cols(3);  // cols[mu][k] = d_mu d_t^k eta

  for (int k = 0; k <= max_order; ++k) {
    // spatial gradient of d_t^k eta
    cb.G.push_back(k == 0 ? deformation_gradient(s.eta) : vector_gradient(cb.v[k - 1]));
    for (int mu = 0; mu < 3; ++mu) cols[mu].push_back(column(cb.G[k], mu));

    // cofactor rows by Leibniz on the cross products
    const VectorField r0 = leibniz_cross(cols[1], cols[2], k);
    const VectorField r1 = leibniz_cross(cols[2], cols[0], k);
    const VectorField r2 = leibniz_cross(cols[0], cols[1], k);
    cb.A.push_back(MatrixField{r0, r1, r2});

    // Jacobian: J_0 = d1 eta . A^1, J_k = sum C(k-1,i) A_i : grad v_{k-1-i}
    if (k == 0) {
      ScalarField J = dot(cols[0][0], VectorField{cb.A[0][0][0], cb.A[0][0][1], cb.A[0][0][2]});
      if (!J.all_finite()) throw NonFiniteError("non-finite Jacobian");
      if (J.min() <= 0.0) {
        std::ostringstream os;
        os << "flow map degenerate: min J = " << J.min();
        throw DegeneracyError(os.str());
      }
      cb.J.push_back(std::move(J));
    } else {
      ScalarField Jk(grid);
      for (int i = 0; i <= k - 1; ++i) {
        const double c = binomial(k - 1, i);
        const MatrixField& Gv = cb.G[k - i];  // grad d_t^{k-1-i} v = grad d_t^{k-i} eta
        for (int mu = 0; mu < 3; ++mu)
          for (int al = 0; al < 3; ++al) Jk.axpy(c, cb.A[i][mu][al] * Gv[al][mu]);
      }
      cb.J.push_back(std::move(Jk));
    }

    // a_k = (A_k - sum_{i>=1} C(k,i) J_i a_{k-i}) / J
    MatrixField ak;
    for (int mu = 0; mu < 3; ++mu)
      for (int al = 0; al < 3; ++al) {
        ScalarField num = cb.A[k][mu][al];
        for (int i = 1; i <= k; ++i) num.axpy(-binomial(k, i), cb.J[i] * cb.a[k - i][mu][al]);
        ak[mu][al] = num / cb.J[0];
      }
    cb.a.push_back(std::move(ak));

    // R = rho0 / J and q = q_kappa(R) by Faa di Bruno
    if (k == 0) {
      cb.R.push_back(s.rho0 / cb.J[0]);
      cb.q.push_back(eos_pressure(cb.R[0], p));
    } else {
      std::vector<ScalarField> fJ(k + 1), fR(k + 1);
      double fact = 1.0;
      for (int j = 1; j <= k; ++j) {
        fact *= -j;  // (-1)^j j!
        ScalarField inv(grid);
        for (std::size_t n = 0; n < inv.size(); ++n) inv[n] = fact * s.rho0[n] / std::pow(cb.J[0][n], j + 1);
        fJ[j] = std::move(inv);
        fR[j] = eos_pressure_derivative(cb.R[0], j, p);
      }
      cb.R.push_back(faa_di_bruno(fJ, cb.J, k));
      cb.q.push_back(faa_di_bruno(fR, cb.R, k));
    }

    // surface-tension trace and the pressure seen by the momentum equation
    ScalarField qt = cb.q[k];
    for (int f = 0; f < 2; ++f) {
      faces[f].push(cb.G[k], p);
      cb.q_gamma[f].push_back(faces[f].q[k]);
      if (mode == TraceMode::BoundaryPressure) set_trace(qt, faces[f].face, faces[f].q[k]);
    }
    cb.q_tilde.push_back(std::move(qt));

    // v_{k+1}, eta_{k+1}
    cb.eta.push_back(cb.v[k]);
    cb.v.push_back(momentum_derivative(s.rho0, cb.A, cb.q_tilde, k));
    for (int a = 0; a < 3; ++a)
      if (!cb.v.back()[a].all_finite()) throw NonFiniteError("non-finite value in time-derivative cascade");
  }
  return cb;
}

}  // namespace slabflow

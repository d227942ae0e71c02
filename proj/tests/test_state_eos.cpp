#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "slabflow/cascade.hpp"
#include "slabflow/identities.hpp"
#include "slabflow/state.hpp"

using namespace slabflow;

TEST_CASE("eos inverse pair") {
  for (double gamma : {1.0, 1.4, 2.0}) {
    const EosParams p = EosParams::make(1e3, gamma, 1.2);
    for (double q : {-5.0, 0.0, 0.3, 40.0}) CHECK(eos_pressure(eos_density(q, p), p) == doctest::Approx(q).epsilon(1e-12));
    CHECK(eos_pressure(std::pow(1.2, 1.0 / gamma), p) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("sound speed parameter is kappa at rest") {
  const EosParams p = EosParams::make(250.0);
  CHECK(eos_pressure_derivative(1.0, 1, p) == doctest::Approx(250.0));
  CHECK(rkk(p) == doctest::Approx(1.0 / 250.0));
  CHECK(rkk(EosParams::make(100.0, 2.0)) == doctest::Approx(std::pow(50.0, -0.5)));
}

TEST_CASE("eos derivatives match finite differences") {
  const EosParams p = EosParams::make(100.0, 1.4);
  const double R = 1.03, h = 1e-5;
  for (int k = 1; k <= 4; ++k) {
    const double fd = (eos_pressure_derivative(R + h, k - 1, p) - eos_pressure_derivative(R - h, k - 1, p)) / (2 * h);
    CHECK(eos_pressure_derivative(R, k, p) == doctest::Approx(fd).epsilon(1e-6));
    const double q = 2.0;
    const double fdq = (eos_density_derivative(q + h, k - 1, p) - eos_density_derivative(q - h, k - 1, p)) / (2 * h);
    CHECK(eos_density_derivative(q, k, p) == doctest::Approx(fdq).epsilon(1e-6));
  }
}

TEST_CASE("eos assumptions and chain rule") {
  const EosParams p = EosParams::make(100.0, 1.4);
  const EosAssumptionReport r = verify_eos_assumptions(p, -10.0, 10.0);
  CHECK(std::isfinite(r.c0));
  CHECK(r.c0 >= 1.0);
  const auto g = Grid::create(16, 16, 17);
  const auto chain = eos_chain_rule_residuals(random_band_limited(g, 2, 1.0, 5)[0], p);
  CHECK(chain[0] < 1e-9);
  CHECK(chain[1] < 1e-6);
}

TEST_CASE("invalid eos parameters") {
  CHECK_THROWS_AS(EosParams::make(-1.0).validate(), SlabError);
  CHECK_THROWS_AS(EosParams::make(10.0, 0.5).validate(), SlabError);
  CHECK_NOTHROW(EosParams::make(10.0).validate());
}

TEST_CASE("state at rest has zero pressure") {
  const auto g = Grid::create(8, 8, 9);
  const EosParams p = EosParams::make(100.0, 1.0, 1.0);
  const FlowState s = FlowState::at_rest(g, p);
  CHECK(pressure_from_state(s, p).max_abs() < 1e-13);
  CHECK((density_from_state(s) - s.rho0).max_abs() == 0.0);
}

TEST_CASE("non-finite state is rejected") {
  const auto g = Grid::create(4, 4, 5);
  FlowState s = FlowState::at_rest(g, EosParams::make(10.0));
  s.v[1][3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(s.check_finite(), NonFiniteError);
}

TEST_CASE("cascade order zero reproduces the state") {
  const auto g = Grid::create(16, 16, 17);
  const EosParams p = EosParams::make(100.0);
  FlowState s = FlowState::at_rest(g, p);
  s.eta = random_flow_map(g, 2, 0.05, 9);
  s.v = random_band_limited(g, 2, 0.05, 10);
  const CascadeBundle cb = time_derivative_cascade(s, p, 2);
  CHECK((cb.q[0] - pressure_from_state(s, p)).max_abs() < 1e-9);
  CHECK(max_abs(cb.v[0] - s.v) == 0.0);
  CHECK_THROWS_AS(time_derivative_cascade(s, p, kMaxCascadeOrder + 1), SlabError);
}

TEST_CASE("cascade time derivatives agree with a Taylor step") {
  const auto g = Grid::create(8, 8, 17);
  const EosParams p = EosParams::make(100.0);
  FlowState s = FlowState::at_rest(g, p);
  s.eta = random_flow_map(g, 2, 0.02, 21);
  s.v = random_band_limited(g, 2, 0.02, 22);
  const CascadeBundle cb = time_derivative_cascade(s, p, 2);
  // d_t J = the time derivative of det(d eta) along eta_t = v
  const double h = 1e-6;
  FlowState sp = s, sm = s;
  for (int a = 0; a < 3; ++a) {
    sp.eta[a].axpy(h, s.v[a]);
    sm.eta[a].axpy(-h, s.v[a]);
  }
  const ScalarField fd = (flow_map_geometry(sp.eta).J - flow_map_geometry(sm.eta).J) * (0.5 / h);
  CHECK((cb.J[1] - fd).max_abs() < 1e-7);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slabflow/dynamics.hpp"
#include "slabflow/identities.hpp"
#include "slabflow/initial_data.hpp"

using namespace slabflow;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("rest state is an equilibrium") {
  const auto g = Grid::create(8, 8, 9);
  const EosParams p = EosParams::make(100.0);
  FlowState s = FlowState::at_rest(g, p);
  for (int i = 0; i < 100; ++i) s = step(s, 1e-3, p);
  CHECK(max_abs(s.v) < 1e-12);
  CHECK(max_abs(s.eta - identity_map(g)) < 1e-12);
  CHECK(s.t == doctest::Approx(0.1));
}

TEST_CASE("right-hand side is the first cascade derivative") {
  const auto g = Grid::create(8, 8, 9);
  const EosParams p = EosParams::make(100.0);
  FlowState s = FlowState::at_rest(g, p);
  s.eta = random_flow_map(g, 2, 0.05, 1);
  s.v = random_band_limited(g, 2, 0.05, 2);
  const RhsOutput r = rhs(s, p);
  const CascadeBundle cb = time_derivative_cascade(s, p, 1);
  CHECK(max_abs(r.d_v - cb.v[1]) == 0.0);
  CHECK(max_abs(r.d_eta - s.v) == 0.0);
}

TEST_CASE("vertical acoustic mode follows linear acoustics") {
  // v3 = d cos(pi y3): flat faces translate rigidly, so the pressure trace stays 0
  const auto g = Grid::create(4, 4, 33);
  const EosParams p = EosParams::make(100.0, 1.0, 1.0, 0.0);
  FlowState s = FlowState::at_rest(g, p);
  const double d = 1e-6, w = pi * std::sqrt(p.kappa);
  s.v[2] = ScalarField::from_function(g, [&](double, double, double y) { return d * std::cos(pi * y); });
  const int n = 400;
  const double T = pi / (2 * w);
  for (int i = 0; i < n; ++i) s = step(s, T / n, p);
  const ScalarField exact =
      ScalarField::from_function(g, [&](double, double, double y) { return -d * w * std::cos(pi * y) * std::sin(w * s.t); });
  CHECK((rhs(s, p).d_v[2] - exact).max_abs() / exact.max_abs() < 1e-3);
}

TEST_CASE("cfl step takes the smallest constraint") {
  const auto g = Grid::create(16, 16, 33);
  const EosParams p = EosParams::make(1e4);
  const FlowState s = FlowState::at_rest(g, p);
  StepperConfig c;
  const CflBreakdown b = cfl_breakdown(s, p, c);
  CHECK(b.acoustic == doctest::Approx(g->h_min() / 100.0));
  CHECK(std::isinf(b.advect));
  CHECK(b.dt == doctest::Approx(0.5 * std::min(b.acoustic, b.surface)));
  c.dt_min = 1.0;
  c.dt_max = 2.0;
  CHECK(cfl_dt(s, p, c) == 1.0);
}

TEST_CASE("stepper validation") {
  StepperConfig c;
  c.cfl_number = 0.0;
  CHECK_THROWS_AS(c.validate(), SlabError);
  c = {};
  c.dt_min = 1.0;
  c.dt_max = 0.5;
  CHECK_THROWS_AS(c.validate(), SlabError);
  const auto g = Grid::create(4, 4, 5);
  const EosParams p = EosParams::make(10.0);
  CHECK_THROWS_AS(step(FlowState::at_rest(g, p), 0.0, p), SlabError);
}

TEST_CASE("rk4 self-convergence") {
  const auto g = Grid::create(8, 8, 17);
  const EosParams p = EosParams::make(100.0);
  const FlowState s0 = initial_state(construct(p, divergence_free_seed(g, "random", 0.5, 3)));
  const double T = 0.004;
  std::vector<VectorField> v;
  for (int n : {16, 32, 64}) {
    FlowState s = s0;
    for (int i = 0; i < n; ++i) s = step(s, T / n, p);
    v.push_back(s.v);
  }
  const double slope = std::log2(max_abs(v[0] - v[1]) / max_abs(v[1] - v[2]));
  CHECK(slope == doctest::Approx(4.0).epsilon(0.075));
}

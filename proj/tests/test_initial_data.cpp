#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slabflow/identities.hpp"
#include "slabflow/initial_data.hpp"
#include "slabflow/norms.hpp"
#include "slabflow/polyharmonic.hpp"

using namespace slabflow;

namespace {

const double pi = std::numbers::pi;

const std::vector<std::vector<TraceOp>> kOps{
    {TraceOp::Value},
    {TraceOp::Value, TraceOp::D3},
    {TraceOp::Value, TraceOp::D3, TraceOp::Lap},
    {TraceOp::Value, TraceOp::D3, TraceOp::D33, TraceOp::LapD3}};

PolyharmonicProblem manufactured(const ScalarField& u, int m) {
  PolyharmonicProblem pb;
  pb.m = m;
  pb.rhs = u;
  for (int i = 0; i < m; ++i) pb.rhs = laplacian(pb.rhs);
  for (Face f : {Face::Bottom, Face::Top}) {
    const int fi = static_cast<int>(f);
    pb.ops[fi] = kOps[m - 1];
    for (TraceOp op : kOps[m - 1]) pb.data[fi].push_back(apply_trace(u, op, f));
  }
  return pb;
}

ScalarField smooth(const GridPtr& g) {
  return ScalarField::from_function(g, [](double a, double b, double c) {
    return std::sin(2 * pi * a) * std::cos(2 * pi * b) * std::exp(c) + std::cos(2 * pi * b) * c * c * c + 0.3;
  });
}

}  // namespace

TEST_CASE("polyharmonic manufactured solutions") {
  const auto g = Grid::create(8, 8, 33);
  const ScalarField u = smooth(g);
  for (int m = 1; m <= 4; ++m) {
    CAPTURE(m);
    CHECK((solve_polyharmonic(manufactured(u, m)) - u).max_abs() < 1e-7);
  }
}

TEST_CASE("polyharmonic solver is linear") {
  const auto g = Grid::create(8, 8, 17);
  const ScalarField u1 = smooth(g);
  const ScalarField u2 = random_band_limited(g, 2, 1.0, 4)[1];
  PolyharmonicProblem a = manufactured(u1, 2), b = manufactured(u2, 2), c = a;
  c.rhs = 2.0 * a.rhs + b.rhs;
  for (int f = 0; f < 2; ++f)
    for (int i = 0; i < 2; ++i) c.data[f][i] = 2.0 * a.data[f][i] + b.data[f][i];
  const ScalarField lhs = solve_polyharmonic(c);
  const ScalarField rhs = 2.0 * solve_polyharmonic(a) + solve_polyharmonic(b);
  CHECK((lhs - rhs).max_abs() < 1e-12 * std::max(1.0, lhs.max_abs()));
}

TEST_CASE("polyharmonic problem validation") {
  const auto g = Grid::create(4, 4, 9);
  PolyharmonicProblem pb = manufactured(ScalarField(g, 1.0), 2);
  pb.m = 5;
  CHECK_THROWS_AS(solve_polyharmonic(pb), SlabError);
  pb = manufactured(ScalarField(g, 1.0), 2);
  pb.ops[0].pop_back();
  CHECK_THROWS_AS(solve_polyharmonic(pb), SlabError);
  pb = manufactured(ScalarField(g, 1.0), 1);
  pb.ops[0] = {TraceOp::D3};
  pb.ops[1] = {TraceOp::D3};
  CHECK_THROWS_WITH_AS(solve_polyharmonic(pb), doctest::Contains("mode (0, 0)"), SlabError);
}

TEST_CASE("divergence-free seeds") {
  const auto g = Grid::create(16, 16, 17);
  CHECK(max_abs(divergence_free_seed(g, "zero", 1.0)) == 0.0);
  const VectorField u = divergence_free_seed(g, "random", 0.5, 7);
  CHECK(max_abs(u) == doctest::Approx(0.5));
  CHECK(divergence(u).max_abs() < 1e-10);
  CHECK(divergence(divergence_free_seed(g, "single", 0.2)).max_abs() < 1e-10);
  CHECK(max_abs(u - divergence_free_seed(g, "random", 0.5, 7)) == 0.0);
  CHECK_THROWS_AS(divergence_free_seed(g, "vortex", 1.0), SlabError);
}

TEST_CASE("zero seed gives zero data") {
  const auto g = Grid::create(8, 8, 9);
  const WellPreparedData d = construct(EosParams::make(100.0), divergence_free_seed(g, "zero", 1.0));
  CHECK(max_abs(d.v0) == 0.0);
  CHECK(d.q0.max_abs() == 0.0);
}

TEST_CASE("construction meets the low-order compatibility conditions") {
  const auto g = Grid::create(16, 16, 17);
  const VectorField u0 = divergence_free_seed(g, "random", 0.5, 7);
  for (double kappa : {1e2, 1e3}) {
    CAPTURE(kappa);
    const WellPreparedData d = construct(EosParams::make(kappa), u0);
    const CompatibilityReport r = compatibility_residuals(d);
    CHECK(r.l2[0] < 1e-9);
    CHECK(r.l2[1] < 1e-9);
    CHECK(r.l2[2] < 1e-3);
    CHECK((d.v0[0] - u0[0]).max_abs() == 0.0);
    CHECK((d.v0[1] - u0[1]).max_abs() == 0.0);
    CHECK((trace(d.q0, Face::Top) - trace(d.p0, Face::Top)).max_abs() < 1e-12);
    const FlowState s = initial_state(d);
    CHECK(max_abs(s.eta - identity_map(g)) == 0.0);
  }
}

TEST_CASE("v0 approaches u0 like 1/kappa") {
  const auto g = Grid::create(16, 16, 17);
  const VectorField u0 = divergence_free_seed(g, "random", 0.5, 7);
  const auto rows = kappa_uniformity_report({EosParams::make(1e2), EosParams::make(1e3)}, u0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].v0_minus_u0_c2 / rows[1].v0_minus_u0_c2 == doctest::Approx(10.0).epsilon(0.3));
}

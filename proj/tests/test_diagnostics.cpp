#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slabflow/dynamics.hpp"
#include "slabflow/energy.hpp"
#include "slabflow/identities.hpp"
#include "slabflow/norms.hpp"
#include "slabflow/residuals.hpp"

using namespace slabflow;

namespace {

const double pi = std::numbers::pi;

FlowState random_state(const GridPtr& g, const EosParams& p, std::uint64_t seed) {
  FlowState s = FlowState::at_rest(g, p);
  s.eta = random_flow_map(g, 2, 0.05, seed);
  s.v = random_band_limited(g, 2, 0.05, seed + 1);
  s.rho0 += random_band_limited(g, 2, 0.1, seed + 2)[0];
  return s;
}

}  // namespace

TEST_CASE("norms of simple fields") {
  const auto g = Grid::create(16, 16, 33);
  CHECK(l2_norm(ScalarField(g, 2.0)) == doctest::Approx(2.0));
  const auto f = ScalarField::from_function(g, [](double a, double, double) { return std::sin(2 * pi * a); });
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(0.5)));
  CHECK(sobolev_norm(f, 1) == doctest::Approx(std::sqrt(0.5 * (1 + 4 * pi * pi))));
  CHECK(ck_norm(f, 2) == doctest::Approx(4 * pi * pi));
  const SurfaceField s = trace(f, Face::Top);
  CHECK(boundary_norm(s, 0.5) == doctest::Approx(std::sqrt(0.5 * std::sqrt(1 + 4 * pi * pi))));
  CHECK(boundary_norm(s, 1.0) == doctest::Approx(std::sqrt(0.5 * (1 + 4 * pi * pi))));
  CHECK_THROWS_AS(sobolev_norm(f, kMaxSobolevIndex + 1), SlabError);
}

TEST_CASE("static state has zero energy") {
  const auto g = Grid::create(8, 8, 9);
  const EosParams p = EosParams::make(100.0);
  const EnergyReport e = energy_report(FlowState::at_rest(g, p), p);
  CHECK(e.E_total == 0.0);
  CHECK(e.N_total == doctest::Approx(1.0));
}

TEST_CASE("energies are non-negative on random states") {
  const auto g = Grid::create(8, 8, 17);
  const EosParams p = EosParams::make(100.0);
  const EnergyReport e = energy_report(random_state(g, p, 3), p);
  CHECK(e.min_component() >= 0.0);
  CHECK(e.E_total > 0.0);
  CHECK(std::isfinite(e.N_total));
  CHECK(e.N_components.back().first == "E");
}

TEST_CASE("first pressure energy of a linear acoustic mode") {
  const auto g = Grid::create(4, 4, 33);
  const EosParams p = EosParams::make(100.0, 1.0, 1.0, 0.0);
  FlowState s = FlowState::at_rest(g, p);
  const double d = 1e-4;
  s.v[2] = ScalarField::from_function(g, [&](double, double, double y) { return d * std::cos(pi * y); });
  // q_t = kappa pi d sin(pi y3): (1/2) rkk ||q_t||^2 = kappa pi^2 d^2 / 4
  const EnergyReport e = energy_report(s, p);
  CHECK(e.E[0].pressure == doctest::Approx(p.kappa * pi * pi * d * d / 4).epsilon(0.01));
}

TEST_CASE("wave equations hold with every source term needed") {
  const auto g = Grid::create(16, 16, 33);
  const EosParams p = EosParams::make(100.0);
  const CascadeBundle cb = time_derivative_cascade(random_state(g, p, 5), p, kMaxCascadeOrder, TraceMode::ClosureOnly);
  for (int r = 1; r <= 3; ++r) {
    CAPTURE(r);
    const WaveTerms w = wave_equation_terms(cb, r);
    const double base = w.relative_residual();
    CHECK(base < 1e-6);
    for (const auto& [name, t] : w.terms) {
      if (t.max_abs() < 1e-12 * w.lhs.max_abs()) continue;  // structurally absent at this order
      CAPTURE(name);
      CHECK(w.relative_residual(name) > 1e3 * base);
    }
  }
  for (int l = 0; l < kWeightedWavePatterns; ++l) {
    CAPTURE(l);
    CHECK(weighted_wave_relative_residual(cb, l) < 1e-6);
  }
  CHECK_THROWS_AS(wave_equation_terms(cb, 4), SlabError);
}

TEST_CASE("continuity, divergence expression and eos chain") {
  const auto g = Grid::create(16, 16, 17);
  const EosParams p = EosParams::make(100.0, 1.4);
  const CascadeBundle cb = time_derivative_cascade(random_state(g, p, 8), p, 3);
  CHECK(continuity_residual(cb) < 1e-9);
  CHECK(divergence_expression_residual(cb) < 1e-9);
  const auto chain = eos_time_chain_residuals(cb);
  CHECK(chain[0] < 1e-10);
  CHECK(chain[1] < 1e-7);
}

TEST_CASE("cauchy invariance along a short trajectory") {
  const auto g = Grid::create(8, 8, 17);
  const EosParams p = EosParams::make(100.0);
  FlowState s = FlowState::at_rest(g, p);
  s.v = random_band_limited(g, 2, 0.05, 12);
  std::vector<FlowState> snaps{s};
  for (int i = 0; i < 40; ++i) {
    s = step(s, 2.5e-4, p);
    snaps.push_back(s);
  }
  CHECK(cauchy_invariance_residual(snaps, p) < 1e-5);
  CHECK_THROWS_AS(cauchy_invariance_residual({snaps[0], snaps[1]}, p), SlabError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slabflow/harness.hpp"

using namespace slabflow;

TEST_CASE("fit_rate on exact power laws") {
  const RateFit a = fit_rate({1, 10, 100}, {1, 10, 100});
  CHECK(a.slope == doctest::Approx(1.0));
  CHECK(a.residual == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit_rate({2, 4, 8}, {3.0 / 2, 3.0 / 4, 3.0 / 8}).slope == doctest::Approx(-1.0));
}

TEST_CASE("fit_rate on a modulated power law") {
  std::vector<double> x, y;
  for (int i = 0; i <= 30; ++i) {
    const double xi = std::pow(10.0, 0.1 * i);
    x.push_back(xi);
    y.push_back((1.0 + 0.1 * std::sin(std::log(xi))) / xi);
  }
  const RateFit f = fit_rate(x, y);
  CHECK(f.slope == doctest::Approx(-1.0).epsilon(0.1));
  CHECK(f.residual > 0.0);
}

TEST_CASE("fit_rate rejects bad input") {
  CHECK_THROWS_AS(fit_rate({1, 2}, {1, 0}), SlabError);
  CHECK_THROWS_AS(fit_rate({-1, 2}, {1, 1}), SlabError);
  CHECK_THROWS_AS(fit_rate({1}, {1}), SlabError);
  CHECK_THROWS_AS(fit_rate({1, 2}, {1}), SlabError);
}

TEST_CASE("zero seed runs statically to max_steps") {
  const auto g = Grid::create(8, 8, 9);
  const EosParams p = EosParams::make(100.0);
  RunOptions o;
  o.t_final = 1.0;
  o.fixed_dt = 1e-3;
  o.stepper.max_steps = 20;
  o.snapshot_every = 5;
  const RunResult r = run_simulation(FlowState::at_rest(g, p), p, o);
  CHECK(r.completed);
  CHECK(r.steps == 20);
  CHECK(r.snapshots.size() == 5);
  for (const StepRecord& rec : r.records) {
    CHECK(rec.div_max == 0.0);
    CHECK(rec.R_minus_beta < 1e-15);
  }
  CHECK(r.energies.front().E_total == 0.0);
}

TEST_CASE("huge amplitude is caught as degeneracy") {
  const auto g = Grid::create(8, 8, 9);
  const EosParams p = EosParams::make(100.0);
  FlowState s = FlowState::at_rest(g, p);
  s.v = divergence_free_seed(g, "random", 500.0, 3);
  RunOptions o;
  o.t_final = 0.05;
  o.fixed_dt = 1e-3;
  o.compute_energy = false;
  const RunResult r = run_simulation(s, p, o);
  CHECK_FALSE(r.completed);
  CHECK_FALSE(r.failure.empty());
  CHECK(r.last_valid_t < 0.05);
  for (const StepRecord& rec : r.records) CHECK(std::isfinite(rec.div_max));
  r.final_state.check_finite();
}

TEST_CASE("sweep config validation") {
  SweepConfig c;
  c.kappas = {100.0};
  CHECK_THROWS_AS(c.validate(), SlabError);
  c.kappas = {1e3, 1e2};
  CHECK_THROWS_AS(c.validate(), SlabError);
  c.kappas = {1e2, 1e2};
  CHECK_THROWS_AS(c.validate(), SlabError);
}

namespace {
SweepConfig small_sweep(const std::string& profile) {
  SweepConfig c;
  c.kappas = {1e2, 1e4};
  c.n1 = c.n2 = 8;
  c.n3 = 9;
  c.profile = profile;
  c.run.t_final = 2e-4;
  c.run.snapshot_every = 4;
  c.workers = 2;
  return c;
}
}  // namespace

TEST_CASE("zero-seed sweep has zero distances") {
  const SweepReport r = sweep_kappa(small_sweep("zero"));
  CHECK_FALSE(r.partial);
  REQUIRE(r.pairs.size() == 1);
  CHECK(r.pairs[0].c0 == 0.0);
  CHECK(r.pairs[0].c2 == 0.0);
}

TEST_CASE("sweeps are deterministic") {
  const SweepReport a = sweep_kappa(small_sweep("random"));
  const SweepReport b = sweep_kappa(small_sweep("random"));
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].sup_N == b.runs[i].sup_N);
    CHECK(a.runs[i].sup_div == b.runs[i].sup_div);
    CHECK(a.runs[i].steps == b.runs[i].steps);
  }
  CHECK(a.pairs[0].c2 == b.pairs[0].c2);
  CHECK(a.pairs[0].c0 > 0.0);
  CHECK(a.dt == b.dt);
}

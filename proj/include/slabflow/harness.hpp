#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slabflow/dynamics.hpp"
#include "slabflow/energy.hpp"
#include "slabflow/initial_data.hpp"
#include "slabflow/residuals.hpp"

namespace slabflow {

struct RunOptions {
  double t_final = 0.02;
  StepperConfig stepper;
  double fixed_dt = 0.0;       // > 0 overrides the CFL step (sweeps share one dt)
  int snapshot_every = 10;     // steps between snapshots (and energy evaluations)
  bool compute_energy = true;  // N(t) at each snapshot
  bool keep_snapshots = true;
};

struct StepRecord {
  int step = 0;
  double t = 0.0, dt = 0.0;
  double div_max = 0.0;          // sup | a^{mu alpha} d_mu v_alpha |
  double R_minus_beta = 0.0;     // sup | R - beta^{1/gamma} |
  double N = -1.0;               // -1 where not evaluated
  double E = -1.0;
};

struct RunResult {
  bool completed = false;
  std::string failure;           // empty on success
  double last_valid_t = 0.0;
  int steps = 0;
  std::vector<StepRecord> records;
  std::vector<FlowState> snapshots;  // includes t = 0 and the final state
  std::vector<EnergyReport> energies;  // one per snapshot when computed
  FlowState final_state;
};

/// Eulerian divergence a^{mu alpha} d_mu v_alpha of the state's velocity.
ScalarField eulerian_divergence(const FlowState& s);

/// Integrates to t_final with RK4; blow-up or degeneracy ends the run early
/// with completed = false and the last valid time recorded.
RunResult run_simulation(const FlowState& initial, const EosParams& p, const RunOptions& opt);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS misfit in log space
};

/// Least-squares slope of log y against log x.
RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y);

struct SweepConfig {
  std::vector<double> kappas;
  int n1 = 16, n2 = 16, n3 = 33;
  double gamma = 1.0, beta = 1.0, sigma = 1.0;
  std::string profile = "random";
  double amplitude = 0.5;
  std::uint64_t seed = 7;
  RunOptions run;
  ConstructionOptions construction;
  int workers = 0;  // 0: SLABFLOW_WORKERS or hardware concurrency
  void validate() const;
};

struct SweepRun {
  double kappa = 0.0;
  bool completed = false;
  std::string failure;
  int steps = 0;
  double sup_N = 0.0, sup_div = 0.0, sup_R_minus_beta = 0.0;
  ResidualReport final_residuals;
  CompatibilityReport compatibility;
  std::vector<StepRecord> records;
};

struct PairDistance {
  double kappa_a = 0.0, kappa_b = 0.0;
  double c0 = 0.0, c2 = 0.0;  // sup over shared snapshots of the C^0 / C^2 distance of v
};

struct SweepReport {
  std::vector<SweepRun> runs;
  std::vector<PairDistance> pairs;  // consecutive kappas
  RateFit div_fit, R_fit;
  double N_ratio = 0.0;  // max_kappa sup_t N / min_kappa sup_t N
  double dt = 0.0;       // shared step
  bool partial = false;
};

/// Worker count from SLABFLOW_WORKERS, else hardware concurrency (at least 1).
int default_workers();

/// Constructs well-prepared data per kappa, runs all with one shared step and
/// snapshot schedule, and measures the Cauchy-in-kappa proxies.
SweepReport sweep_kappa(const SweepConfig& cfg);

}  // namespace slabflow

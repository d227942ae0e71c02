#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "slabflow/cascade.hpp"

namespace slabflow {

enum class FieldSelector { Eta, V, Q };

/// One weighted mixed derivative r_kappa^ell d-bar^nbar d_t^nt.
struct DerivativePattern {
  std::string label;
  double ell = 0.0;
  int nbar = 0;
  int nt = 0;
};

/// The patterns of the weighted family D^r, r = 1..4.
const std::vector<DerivativePattern>& weighted_patterns(int r);

struct WeightedDerivative {
  DerivativePattern pattern;
  std::array<int, 2> tangential{};     // multi-index (a1, a2), a1 + a2 = nbar
  double weight = 1.0;                 // r_kappa^ell
  std::vector<ScalarField> components; // 3 for eta / v, 1 for q
};

/// Every D^r pattern applied to the selected field (q means the momentum
/// pressure q_tilde), with the weights included. Throws on insufficient depth.
std::vector<WeightedDerivative> weighted_derivatives(const CascadeBundle& cb, FieldSelector field, int r);

struct EnergyParts {
  double velocity = 0.0, pressure = 0.0, boundary = 0.0;
  double total() const { return velocity + pressure + boundary; }
};

struct EnergyReport {
  double t = 0.0;
  std::array<EnergyParts, 4> E;   // E_r, r = 1..4
  std::array<EnergyParts, 3> W;   // W_r^2, r = 1..3
  std::array<EnergyParts, 3> W4;  // W_4^2 for ell = 1, 1/2, 0
  double E_total = 0.0;           // sum_r (E_r + W_r^2), W_4^2 summed over ell
  double N_total = 0.0;
  std::vector<std::pair<std::string, double>> N_components;  // terms of N (E last)
  std::vector<std::pair<std::string, double>> N_extended;    // further quantities of the P list
  double min_component() const;
};

/// Cascade depth needed by the energy functionals.
inline constexpr int kEnergyCascadeOrder = 4;

std::array<EnergyParts, 4> energy_E(const CascadeBundle& cb);
/// W_r^2 (r = 1..3) and W_4^2 per ell.
std::pair<std::array<EnergyParts, 3>, std::array<EnergyParts, 3>> energy_W(const CascadeBundle& cb);
EnergyReport energy_report(const CascadeBundle& cb, double t = 0.0);
EnergyReport energy_report(const FlowState& s, const EosParams& p);

}  // namespace slabflow

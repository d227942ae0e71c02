#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "slabflow/energy.hpp"
#include "slabflow/harness.hpp"
#include "slabflow/identities.hpp"
#include "slabflow/initial_data.hpp"
#include "slabflow/residuals.hpp"

namespace slabflow {

inline constexpr const char* kArtifactName = "slabflow";
inline constexpr const char* kArtifactVersion = "0.1.0";

// CSV schemas. Column sets are stable; tests pin them.
inline constexpr const char* kRunCsvHeader = "step,t,dt,div_max,R_minus_beta,N,E";
inline constexpr const char* kSweepRunsCsvHeader =
    "kappa,completed,steps,sup_N,sup_div,sup_R_minus_beta,wave_1,wave_2,wave_3,"
    "weighted_wave_1,weighted_wave_2,weighted_wave_3,continuity,divergence_expression,"
    "compat_0,compat_1,compat_2,compat_3";
inline constexpr const char* kSweepPairsCsvHeader = "kappa_a,kappa_b,c0_distance,c2_distance";
inline constexpr const char* kUniformityCsvHeader =
    "kappa,v0_h4,v0_h4_boundary,q0_h4,q0_h4_boundary,v0_minus_u0_c2,div_v0_c1,compat_0,compat_1,compat_2,compat_3";

nlohmann::json provenance(const std::string& config_hash, const std::string& command);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const CompatibilityReport& r);
nlohmann::json to_json(const EnergyReport& r);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const RunResult& r);  // summary (no fields)
nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const std::vector<UniformityRow>& rows);

std::string run_csv(const RunResult& r);
std::string sweep_runs_csv(const SweepReport& r);
std::string sweep_pairs_csv(const SweepReport& r);
std::string uniformity_csv(const std::vector<UniformityRow>& rows);

struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};

/// Standalone SVG line plot; non-positive values are dropped on log axes.
std::string svg_line_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                          const std::vector<PlotSeries>& series, bool log_x, bool log_y);

void write_text(const std::string& path, const std::string& content);
/// Writes the report with the provenance block attached under "provenance".
void write_json(const std::string& path, nlohmann::json report, const nlohmann::json& prov);

}  // namespace slabflow

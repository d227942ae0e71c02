#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "slabflow/checkpoint.hpp"
#include "slabflow/config.hpp"
#include "slabflow/identities.hpp"
#include "slabflow/report.hpp"

using namespace slabflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("slabflow_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string key_of(const std::string& json) {
  try {
    parse_config(json);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(SLABFLOW_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream out(p);
  out << s;
}

}  // namespace

TEST_CASE("config defaults and overrides") {
  const Config c = parse_config(R"({"grid": {"n3": 17}, "eos": {"kappa": 1e3}, "sweep": {"kappas": [10, 100]}})");
  CHECK(c.grid.n1 == 16);
  CHECK(c.grid.n3 == 17);
  CHECK(c.eos_params().kappa == 1e3);
  CHECK(c.eos_params().c_gamma == 1.0);
  CHECK(c.sweep.kappas.size() == 2);
}

TEST_CASE("config schema errors name the key") {
  CHECK(key_of(R"({"grid": {"n3": 32}})") == "grid.n3");
  CHECK(key_of(R"({"grid": {"n4": 3}})") == "grid.n4");
  CHECK(key_of(R"({"kappa": 3})") == "kappa");
  CHECK(key_of(R"({"eos": {"kappa": "big"}})") == "eos.kappa");
  CHECK(key_of(R"({"time": {"max_steps": 1.5}})") == "time.max_steps");
  CHECK(key_of(R"({"sweep": {"kappas": [100]}})") == "sweep.kappas");
  CHECK(key_of(R"({"data": {"profile": "vortex"}})") == "data.profile");
  CHECK(key_of("{not json") == "<root>");
}

TEST_CASE("config hash is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex(Config{}.to_json()) == fnv1a_hex(parse_config(Config{}.to_json()).to_json()));
}

TEST_CASE("state checkpoint roundtrip is bit-exact") {
  const auto g = Grid::create(8, 8, 9);
  const EosParams p = EosParams::make(123.456, 1.4, 1.1, 0.7);
  FlowState s = FlowState::at_rest(g, p);
  s.eta = random_flow_map(g, 2, 0.05, 1);
  s.v = random_band_limited(g, 2, 0.05, 2);
  s.t = 0.1 + 1e-17;
  const fs::path dir = scratch("state");
  save_checkpoint(s, p, dir.string());
  const LoadedState l = load_state_checkpoint(dir.string());
  CHECK(l.state.t == s.t);
  CHECK(l.params.kappa == p.kappa);
  CHECK(l.params.c_gamma == p.c_gamma);
  for (int c = 0; c < 3; ++c) {
    CHECK(std::equal(s.eta[c].values().begin(), s.eta[c].values().end(), l.state.eta[c].values().begin()));
    CHECK(std::equal(s.v[c].values().begin(), s.v[c].values().end(), l.state.v[c].values().begin()));
  }
  CHECK(std::equal(s.rho0.values().begin(), s.rho0.values().end(), l.state.rho0.values().begin()));
  CHECK(fs::file_size(dir / "arrays.bin") == 7 * g->size() * 8);
  CHECK_THROWS_AS(load_data_checkpoint(dir.string()), CheckpointError);
}

TEST_CASE("well-prepared data checkpoint roundtrip") {
  const auto g = Grid::create(8, 8, 9);
  const WellPreparedData d = construct(EosParams::make(100.0), divergence_free_seed(g, "random", 0.5, 3));
  const fs::path dir = scratch("data");
  save_checkpoint(d, dir.string());
  const WellPreparedData l = load_data_checkpoint(dir.string());
  CHECK(max_abs(l.v0 - d.v0) == 0.0);
  CHECK(max_abs(l.w0 - d.w0) == 0.0);
  CHECK((l.q0 - d.q0).max_abs() == 0.0);
  CHECK(l.params.kappa == 100.0);
}

TEST_CASE("damaged checkpoints are rejected") {
  const auto g = Grid::create(4, 4, 5);
  const EosParams p = EosParams::make(10.0);
  const fs::path dir = scratch("damaged");
  save_checkpoint(FlowState::at_rest(g, p), p, dir.string());
  fs::resize_file(dir / "arrays.bin", fs::file_size(dir / "arrays.bin") - 8);
  CHECK_THROWS_WITH_AS(load_state_checkpoint(dir.string()), doctest::Contains("length mismatch"), CheckpointError);

  save_checkpoint(FlowState::at_rest(g, p), p, dir.string());
  std::ifstream in(dir / "manifest.json");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  const auto pos = text.find("\"version\": 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 12, "\"version\": 9");
  write_file(dir / "manifest.json", text);
  CHECK_THROWS_WITH_AS(load_state_checkpoint(dir.string()), doctest::Contains("version"), CheckpointError);
  CHECK_THROWS_AS(load_state_checkpoint((dir / "missing").string()), CheckpointError);
}

TEST_CASE("csv golden headers") {
  CHECK(std::string(kRunCsvHeader) == "step,t,dt,div_max,R_minus_beta,N,E");
  CHECK(std::string(kSweepPairsCsvHeader) == "kappa_a,kappa_b,c0_distance,c2_distance");
  CHECK(std::string(kSweepRunsCsvHeader) ==
        "kappa,completed,steps,sup_N,sup_div,sup_R_minus_beta,wave_1,wave_2,wave_3,weighted_wave_1,"
        "weighted_wave_2,weighted_wave_3,continuity,divergence_expression,compat_0,compat_1,compat_2,compat_3");
  RunResult r;
  r.records.push_back({});
  const std::string csv = run_csv(r);
  CHECK(csv.substr(0, csv.find('\n')) == kRunCsvHeader);
  CHECK(sweep_pairs_csv(SweepReport{}) == std::string(kSweepPairsCsvHeader) + "\n");
}

TEST_CASE("reports carry provenance") {
  const fs::path dir = scratch("report");
  write_json((dir / "r.json").string(), to_json(ResidualReport{}), provenance("abc", "residuals"));
  std::ifstream in(dir / "r.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["provenance"]["config_hash"] == "abc");
  CHECK(j["provenance"]["version"] == kArtifactVersion);
  CHECK(j["cauchy"].is_null());
  const std::string svg = svg_line_plot("t", "x", "y", {{"a", {1, 10}, {1, 0.1}}}, true, true);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch("cli");
  fs::create_directories(dir);
  write_file(dir / "small.json", R"({"grid": {"n1": 8, "n2": 8, "n3": 9}, "time": {"t_final": 0.0005}})");
  write_file(dir / "even.json", R"({"grid": {"n3": 8}})");
  write_file(dir / "geo.json", R"({"grid": {"n1": 16, "n2": 16, "n3": 17}})");
  const std::string cfg = "--config " + (dir / "small.json").string() + " --out " + (dir / "out").string();
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("make-data --config " + (dir / "even.json").string()) == 2);
  CHECK(run_cli("make-data --config " + (dir / "missing.json").string()) == 2);
  // too coarse for the 1e-8 identity threshold: a failed check, not a usage error
  CHECK(run_cli("verify-geometry --samples 2 " + cfg) == 1);
  CHECK(run_cli("verify-geometry --samples 2 --config " + (dir / "geo.json").string() + " --out " +
                (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "identity_report.json"));
  CHECK(run_cli("make-data --kappa 1e3 " + cfg) == 0);
  CHECK(fs::exists(dir / "out" / "data" / "manifest.json"));
  CHECK(fs::exists(dir / "out" / "compatibility.json"));
  CHECK(run_cli("simulate " + cfg) == 0);
  CHECK(fs::exists(dir / "out" / "energy.csv"));
  CHECK(run_cli("energy-report " + cfg + " --state " + (dir / "out" / "snapshots" / "snap_0000").string()) == 0);
  CHECK(run_cli("residuals " + cfg + " --state " + (dir / "nowhere").string()) == 2);
  CHECK(run_cli("sweep-kappa --kappas 100,1000 " + cfg) == 0);
  CHECK(fs::exists(dir / "out" / "sweep_pairs.csv"));
  CHECK(fs::exists(dir / "out" / "div_vs_kappa.svg"));
  CHECK(run_cli("sweep-kappa --kappas 100,abc " + cfg) == 2);
}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slabflow/dynamics.hpp"
#include "slabflow/eos.hpp"

namespace slabflow {

/// Schema violations carry the offending key path ("grid.n3").
class ConfigError : public SlabError {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : SlabError(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct Config {
  struct {
    int n1 = 16, n2 = 16, n3 = 33;
  } grid;
  struct {
    double kappa = 100.0, gamma = 1.0, beta = 1.0;
    double c_gamma = 0.0;  // 0: use 1/gamma
  } eos;
  double sigma = 1.0;
  struct {
    double t_final = 0.02, cfl = 0.5;
    long max_steps = 1000000;
    double dt_min = 1e-9, dt_max = 1e-2;
  } time;
  struct {
    std::string profile = "random";
    double amplitude = 0.5;
    std::uint64_t seed = 7;
  } data;
  struct {
    std::string dir = "out";
    int snapshot_every = 50;
  } output;
  struct {
    std::vector<double> kappas{1e2, 1e3, 1e4};
  } sweep;

  EosParams eos_params() const;
  StepperConfig stepper() const;
  /// Re-runs every owning module's validation; throws ConfigError.
  void validate() const;
  std::string to_json() const;
};

Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);

/// FNV-1a 64-bit hash, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace slabflow

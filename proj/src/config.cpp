#include "slabflow/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace slabflow {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError(path.empty() ? k : path + "." + k, "unknown key");
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

template <class T>
void read(const json& obj, const std::string& path, const std::string& key, T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  const std::string kp = join(path, key);
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError(kp, "expected a string");
    out = v.get<std::string>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(kp, "expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned() || v.get<long long>() >= 0) out = v.get<T>();
      else throw ConfigError(kp, "expected a non-negative integer");
    } else {
      out = v.get<T>();
    }
  } else {
    if (!v.is_number()) throw ConfigError(kp, "expected a number");
    out = v.get<double>();
  }
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

}  // namespace

EosParams Config::eos_params() const {
  EosParams p = EosParams::make(eos.kappa, eos.gamma, eos.beta, sigma);
  if (eos.c_gamma > 0.0) p.c_gamma = eos.c_gamma;
  return p;
}

StepperConfig Config::stepper() const {
  StepperConfig s;
  s.cfl_number = time.cfl;
  s.dt_min = time.dt_min;
  s.dt_max = time.dt_max;
  s.max_steps = time.max_steps;
  return s;
}

void Config::validate() const {
  require(grid.n1 >= 4 && grid.n1 % 2 == 0, "grid.n1", "must be even and >= 4");
  require(grid.n2 >= 4 && grid.n2 % 2 == 0, "grid.n2", "must be even and >= 4");
  require(grid.n3 >= 5 && grid.n3 % 2 == 1, "grid.n3", "must be odd and >= 5");
  require(eos.kappa > 0.0 && std::isfinite(eos.kappa), "eos.kappa", "must be positive");
  require(eos.gamma >= 1.0 && std::isfinite(eos.gamma), "eos.gamma", "must be >= 1");
  require(eos.beta > 0.0 && std::isfinite(eos.beta), "eos.beta", "must be positive");
  require(eos.c_gamma >= 0.0 && std::isfinite(eos.c_gamma), "eos.c_gamma", "must be non-negative (0 selects 1/gamma)");
  require(sigma >= 0.0 && std::isfinite(sigma), "sigma", "must be non-negative");
  require(time.t_final > 0.0, "time.t_final", "must be positive");
  require(time.cfl > 0.0 && time.cfl <= 1.0, "time.cfl", "must be in (0, 1]");
  require(time.max_steps > 0, "time.max_steps", "must be positive");
  require(time.dt_min > 0.0, "time.dt_min", "must be positive");
  require(time.dt_max >= time.dt_min, "time.dt_max", "must be >= time.dt_min");
  static const std::set<std::string> profiles{"zero", "single", "random"};
  require(profiles.count(data.profile) > 0, "data.profile", "must be one of zero, single, random");
  require(data.amplitude >= 0.0 && std::isfinite(data.amplitude), "data.amplitude", "must be non-negative");
  require(output.snapshot_every > 0, "output.snapshot_every", "must be positive");
  require(!output.dir.empty(), "output.dir", "must not be empty");
  require(sweep.kappas.size() >= 2, "sweep.kappas", "needs at least two values");
  for (std::size_t i = 0; i < sweep.kappas.size(); ++i) {
    require(sweep.kappas[i] > 0.0, "sweep.kappas", "values must be positive");
    require(i == 0 || sweep.kappas[i] > sweep.kappas[i - 1], "sweep.kappas", "values must be distinct and ascending");
  }
  try {
    eos_params().validate();
  } catch (const SlabError& e) {
    throw ConfigError("eos", e.what());
  }
}

std::string Config::to_json() const {
  json j;
  j["grid"] = {{"n1", grid.n1}, {"n2", grid.n2}, {"n3", grid.n3}};
  j["eos"] = {{"kappa", eos.kappa}, {"gamma", eos.gamma}, {"beta", eos.beta}, {"c_gamma", eos.c_gamma}};
  j["sigma"] = sigma;
  j["time"] = {{"t_final", time.t_final}, {"cfl", time.cfl}, {"max_steps", time.max_steps},
               {"dt_min", time.dt_min}, {"dt_max", time.dt_max}};
  j["data"] = {{"profile", data.profile}, {"amplitude", data.amplitude}, {"seed", data.seed}};
  j["output"] = {{"dir", output.dir}, {"snapshot_every", output.snapshot_every}};
  j["sweep"] = {{"kappas", sweep.kappas}};
  return j.dump(2);
}

Config parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  Config c;
  reject_unknown(j, "", {"grid", "eos", "sigma", "time", "data", "output", "sweep"});
  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, "grid", {"n1", "n2", "n3"});
    read(g, "grid", "n1", c.grid.n1);
    read(g, "grid", "n2", c.grid.n2);
    read(g, "grid", "n3", c.grid.n3);
  }
  if (j.contains("eos")) {
    const json& e = j["eos"];
    reject_unknown(e, "eos", {"kappa", "gamma", "beta", "c_gamma"});
    read(e, "eos", "kappa", c.eos.kappa);
    read(e, "eos", "gamma", c.eos.gamma);
    read(e, "eos", "beta", c.eos.beta);
    read(e, "eos", "c_gamma", c.eos.c_gamma);
  }
  read(j, "", "sigma", c.sigma);
  if (j.contains("time")) {
    const json& t = j["time"];
    reject_unknown(t, "time", {"t_final", "cfl", "max_steps", "dt_min", "dt_max"});
    read(t, "time", "t_final", c.time.t_final);
    read(t, "time", "cfl", c.time.cfl);
    read(t, "time", "max_steps", c.time.max_steps);
    read(t, "time", "dt_min", c.time.dt_min);
    read(t, "time", "dt_max", c.time.dt_max);
  }
  if (j.contains("data")) {
    const json& d = j["data"];
    reject_unknown(d, "data", {"profile", "amplitude", "seed"});
    read(d, "data", "profile", c.data.profile);
    read(d, "data", "amplitude", c.data.amplitude);
    read(d, "data", "seed", c.data.seed);
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    reject_unknown(o, "output", {"dir", "snapshot_every"});
    read(o, "output", "dir", c.output.dir);
    read(o, "output", "snapshot_every", c.output.snapshot_every);
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    reject_unknown(s, "sweep", {"kappas"});
    if (s.contains("kappas")) {
      const json& k = s["kappas"];
      if (!k.is_array()) throw ConfigError("sweep.kappas", "expected an array");
      c.sweep.kappas.clear();
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (!k[i].is_number()) throw ConfigError("sweep.kappas[" + std::to_string(i) + "]", "expected a number");
        c.sweep.kappas.push_back(k[i].get<double>());
      }
    }
  }
  c.validate();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace slabflow

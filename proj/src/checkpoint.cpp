#include "slabflow/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <utility>
#include <vector>

namespace slabflow {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using NamedArray = std::pair<std::string, const ScalarField*>;

json params_json(const EosParams& p) {
  return {{"kappa", p.kappa}, {"gamma", p.gamma}, {"c_gamma", p.c_gamma}, {"beta", p.beta}, {"sigma", p.sigma}};
}

EosParams params_from(const json& j) {
  EosParams p;
  p.kappa = j.at("kappa").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.c_gamma = j.at("c_gamma").get<double>();
  p.beta = j.at("beta").get<double>();
  p.sigma = j.at("sigma").get<double>();
  return p;
}

void write(const std::string& dir, const std::string& kind, const Grid& g, double t, const EosParams& p,
           const std::vector<NamedArray>& arrays) {
  fs::create_directories(dir);
  json m;
  m["format"] = "slabflow-checkpoint";
  m["version"] = kCheckpointVersion;
  m["kind"] = kind;
  m["byte_order"] = "little";
  m["grid"] = {{"n1", g.n1()}, {"n2", g.n2()}, {"n3", g.n3()}, {"dealias", g.dealias()}};
  m["t"] = t;
  m["params"] = params_json(p);

  std::vector<unsigned char> bytes;
  json list = json::array();
  for (const auto& [name, f] : arrays) {
    list.push_back({{"name", name}, {"shape", {g.n3(), g.n2(), g.n1()}}, {"offset", bytes.size()}});
    for (double x : f->values()) {
      const auto u = std::bit_cast<std::uint64_t>(x);
      for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<unsigned char>(u >> (8 * b)));
    }
  }
  m["arrays"] = list;
  m["total_bytes"] = bytes.size();

  std::ofstream bin(fs::path(dir) / "arrays.bin", std::ios::binary);
  bin.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!bin) throw CheckpointError("failed writing arrays.bin in " + dir);
  std::ofstream man(fs::path(dir) / "manifest.json");
  man << m.dump(2) << "\n";
  if (!man) throw CheckpointError("failed writing manifest.json in " + dir);
}

struct Raw {
  json manifest;
  GridPtr grid;
  std::vector<std::pair<std::string, ScalarField>> arrays;

  const ScalarField& get(const std::string& name) const {
    for (const auto& [n, f] : arrays)
      if (n == name) return f;
    throw CheckpointError("checkpoint lacks array '" + name + "'");
  }
};

Raw read(const std::string& dir, const std::string& kind) {
  Raw r;
  std::ifstream man(fs::path(dir) / "manifest.json");
  if (!man) throw CheckpointError("cannot read manifest.json in " + dir);
  try {
    r.manifest = json::parse(man);
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("malformed manifest: ") + e.what());
  }
  const json& m = r.manifest;
  try {
    if (!m.contains("version")) throw CheckpointError("manifest has no version field");
    if (m.at("version").get<int>() != kCheckpointVersion) {
      std::ostringstream os;
      os << "checkpoint version " << m.at("version") << " != supported " << kCheckpointVersion;
      throw CheckpointError(os.str());
    }
    if (m.at("kind").get<std::string>() != kind)
      throw CheckpointError("checkpoint holds " + m.at("kind").get<std::string>() + ", expected " + kind);
    if (m.at("byte_order").get<std::string>() != "little") throw CheckpointError("unsupported byte order");
    const json& g = m.at("grid");
    r.grid = Grid::create(g.at("n1").get<int>(), g.at("n2").get<int>(), g.at("n3").get<int>(),
                          g.at("dealias").get<bool>());

    std::ifstream bin(fs::path(dir) / "arrays.bin", std::ios::binary);
    if (!bin) throw CheckpointError("cannot read arrays.bin in " + dir);
    const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());

    std::size_t expected = 0;
    for (const json& a : m.at("arrays")) {
      std::size_t count = 1;
      for (const json& d : a.at("shape")) count *= d.get<std::size_t>();
      if (count != r.grid->size()) throw CheckpointError("array '" + a.at("name").get<std::string>() + "' shape does not match grid");
      if (a.at("offset").get<std::size_t>() != expected) throw CheckpointError("array offsets are not contiguous");
      expected += 8 * count;
    }
    if (m.at("total_bytes").get<std::size_t>() != expected || bytes.size() != expected) {
      std::ostringstream os;
      os << "arrays.bin length mismatch: manifest implies " << expected << " bytes, file has " << bytes.size();
      throw CheckpointError(os.str());
    }
    for (const json& a : m.at("arrays")) {
      ScalarField f(r.grid);
      std::size_t off = a.at("offset").get<std::size_t>();
      for (double& x : f.values()) {
        std::uint64_t u = 0;
        for (int b = 0; b < 8; ++b) u |= static_cast<std::uint64_t>(bytes[off++]) << (8 * b);
        x = std::bit_cast<double>(u);
      }
      r.arrays.emplace_back(a.at("name").get<std::string>(), std::move(f));
    }
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("malformed manifest: ") + e.what());
  }
  return r;
}

VectorField vec(const Raw& r, const std::string& name) {
  return {r.get(name + "_1"), r.get(name + "_2"), r.get(name + "_3")};
}

void push_vec(std::vector<NamedArray>& out, const std::string& name, const VectorField& v) {
  for (int c = 0; c < 3; ++c) out.emplace_back(name + "_" + std::to_string(c + 1), &v[c]);
}

}  // namespace

void save_checkpoint(const FlowState& s, const EosParams& p, const std::string& dir) {
  std::vector<NamedArray> arrays;
  push_vec(arrays, "eta", s.eta);
  push_vec(arrays, "v", s.v);
  arrays.emplace_back("rho0", &s.rho0);
  write(dir, "FlowState", *s.grid, s.t, p, arrays);
}

void save_checkpoint(const WellPreparedData& d, const std::string& dir) {
  std::vector<NamedArray> arrays;
  push_vec(arrays, "u0", d.u0);
  push_vec(arrays, "v0", d.v0);
  push_vec(arrays, "w0", d.w0);
  arrays.emplace_back("q0", &d.q0);
  arrays.emplace_back("p0", &d.p0);
  write(dir, "WellPreparedData", *d.q0.grid(), 0.0, d.params, arrays);
}

LoadedState load_state_checkpoint(const std::string& dir) {
  const Raw r = read(dir, "FlowState");
  LoadedState out;
  out.state.grid = r.grid;
  out.state.eta = vec(r, "eta");
  out.state.v = vec(r, "v");
  out.state.rho0 = r.get("rho0");
  try {
    out.state.t = r.manifest.at("t").get<double>();
    out.params = params_from(r.manifest.at("params"));
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("malformed manifest: ") + e.what());
  }
  return out;
}

WellPreparedData load_data_checkpoint(const std::string& dir) {
  const Raw r = read(dir, "WellPreparedData");
  WellPreparedData d;
  d.u0 = vec(r, "u0");
  d.v0 = vec(r, "v0");
  d.w0 = vec(r, "w0");
  d.q0 = r.get("q0");
  d.p0 = r.get("p0");
  try {
    d.params = params_from(r.manifest.at("params"));
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("malformed manifest: ") + e.what());
  }
  return d;
}

}  // namespace slabflow

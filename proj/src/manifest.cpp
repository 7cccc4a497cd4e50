#include <fstream>

#include <nlohmann/json.hpp>

#include "sllg/io.hpp"

namespace sllg {

using nlohmann::json;

void write_manifest(const std::string& path, const RunManifest& m) {
  json j;
  j["experiment"] = m.experiment;
  j["params"] = {{"lambda", m.params.lambda}, {"sigma", m.params.sigma},
                 {"g", {m.params.g.x, m.params.g.y, m.params.g.z}},
                 {"L", m.params.L},           {"nx", m.params.nx},
                 {"dt", m.params.dt},         {"seed", m.params.seed}};
  j["settings"] = m.settings;
  j["outputs"] = m.outputs;
  j["wall_seconds"] = m.wall_seconds;
  j["steps"] = m.steps;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("bad manifest " + path + ": " + e.what());
  }
  RunManifest m;
  try {
    m.experiment = j.at("experiment").get<std::string>();
    const json& p = j.at("params");
    m.params.lambda = p.at("lambda").get<double>();
    m.params.sigma = p.at("sigma").get<double>();
    m.params.g = {p.at("g")[0].get<double>(), p.at("g")[1].get<double>(),
                  p.at("g")[2].get<double>()};
    m.params.L = p.at("L").get<double>();
    m.params.nx = p.at("nx").get<int>();
    m.params.dt = p.at("dt").get<double>();
    m.params.seed = p.at("seed").get<std::uint64_t>();
    m.settings = j.at("settings").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
    m.wall_seconds = j.at("wall_seconds").get<double>();
    m.steps = j.at("steps").get<std::uint64_t>();
  } catch (const std::exception& e) {
    throw IoError("bad manifest " + path + ": " + e.what());
  }
  return m;
}

}  // namespace sllg

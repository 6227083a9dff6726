#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pdolab/experiments.hpp"

namespace pdolab {

namespace {

using nlohmann::json;

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(j, {"scenario", "seed", "workers", "out", "cases", "grid", "symbols", "specs", "tolerances"}, "config");
  ExperimentConfig c;
  if (!j.contains("scenario") || !j["scenario"].is_string()) throw ConfigError("config: 'scenario' (string) is required");
  c.scenario = j["scenario"].get<std::string>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("workers")) {
    c.workers = integer(j["workers"], "workers");
    if (c.workers < 1) throw ConfigError("workers: must be >= 1");
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("out: expected a string");
    c.out_dir = j["out"].get<std::string>();
  }
  if (j.contains("cases")) {
    c.cases = integer(j["cases"], "cases");
    if (c.cases < 1) throw ConfigError("cases: must be >= 1");
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    only_keys(g, {"n", "L", "N"}, "grid");
    GridParams gp;
    gp.n = g.contains("n") ? integer(g["n"], "grid.n") : 1;
    if (!g.contains("L") || !g.contains("N")) throw ConfigError("grid: 'L' and 'N' are required");
    gp.L = number(g["L"], "grid.L");
    gp.N = integer(g["N"], "grid.N");
    if (gp.n != 1 && gp.n != 2) throw ConfigError("grid.n: must be 1 or 2");
    if (!(gp.L > 0)) throw ConfigError("grid.L: must be positive");
    if (gp.N < 4 || (gp.N & (gp.N - 1))) throw ConfigError("grid.N: must be a power of two >= 4");
    c.grid = gp;
  }
  if (j.contains("symbols")) {
    if (!j["symbols"].is_array()) throw ConfigError("symbols: expected an array");
    for (const auto& s : j["symbols"]) {
      only_keys(s, {"name", "params", "scale"}, "symbols[]");
      SymbolSelection sel;
      if (!s.contains("name") || !s["name"].is_string()) throw ConfigError("symbols[]: 'name' (string) is required");
      sel.name = s["name"].get<std::string>();
      if (s.contains("scale")) sel.scale = number(s["scale"], "symbols[].scale");
      if (s.contains("params")) {
        if (!s["params"].is_object()) throw ConfigError("symbols[].params: expected an object");
        for (auto it = s["params"].begin(); it != s["params"].end(); ++it)
          sel.params[it.key()] = number(it.value(), "symbols[].params." + it.key());
      }
      c.symbols.push_back(sel);
    }
  }
  if (j.contains("specs")) {
    if (!j["specs"].is_array()) throw ConfigError("specs: expected an array");
    for (const auto& s : j["specs"]) {
      only_keys(s, {"s", "p"}, "specs[]");
      SpaceSpec sp;
      if (s.contains("s")) sp.s = number(s["s"], "specs[].s");
      if (s.contains("p")) sp.p = number(s["p"], "specs[].p");
      if (!(sp.p >= 1)) throw ConfigError("specs[].p: must be >= 1");
      c.specs.push_back(sp);
    }
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ConfigError("tolerances: expected an object");
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
      double v = number(it.value(), "tolerances." + it.key());
      if (!(v > 0)) throw ConfigError("tolerances." + it.key() + ": must be positive");
      c.tolerances[it.key()] = v;
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_seed_override(ExperimentConfig& c) {
  const char* env = std::getenv("PDO_LAB_SEED");
  if (!env || !*env) return;
  std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 20)
    throw ConfigError("PDO_LAB_SEED: expected a non-negative integer, got '" + s + "'");
  try {
    c.seed = std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError("PDO_LAB_SEED: out of range");
  }
}

}  // namespace pdolab

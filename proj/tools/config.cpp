#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace jetmap::cli {

using nlohmann::json;

json default_config() {
  return json::parse(R"({
    "duffing":    {"beta": 0.1, "eps": 1.5},
    "integrator": {"mode": "adaptive", "tol": 1e-12, "norm": "mixed", "ns": 100},
    "table":      {"m": 3, "p": 4},
    "system":     {"kind": "duffing"},
    "map":        {"order": 3, "method": "forward", "file": "",
                   "expansion": {"z1": 0.3, "z2": 0.4, "sigma": 0.5}},
    "scan":       {"source": "exact", "omega": {"from": 1.0, "to": 2.0, "step": 1e-3},
                   "descending": false, "transient": 2000, "record": 200,
                   "seed": "continuation", "start": [0.0, 0.0], "threads": 1},
    "attract":    {"source": "exact", "omega": 1.2902, "transient": 2000, "count": 10000,
                   "start": [0.0, 0.0]}
  })");
}

namespace {

// Keys accepted in each section; values are checked later by the accessors.
const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"duffing", {"beta", "eps"}},
      {"integrator", {"mode", "tol", "norm", "ns"}},
      {"table", {"m", "p"}},
      {"system", {"kind", "dim", "terms", "initial", "t_i", "t_f"}},
      {"map", {"order", "method", "file", "expansion"}},
      {"scan", {"source", "omega", "descending", "transient", "record", "seed", "start", "threads"}},
      {"attract", {"source", "omega", "transient", "count", "start"}},
  };
  return keys;
}

void check_keys(const json& file) {
  if (!file.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [section, body] : file.items()) {
    const auto it = allowed_keys().find(section);
    if (it == allowed_keys().end()) throw ConfigError("config: unknown section '" + section + "'");
    if (!body.is_object()) throw ConfigError("config: section '" + section + "' must be an object");
    for (const auto& [key, value] : body.items()) {
      if (!it->second.contains(key)) throw ConfigError("config: unknown key '" + section + "." + key + "'");
    }
  }
}

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  try {
    return json::parse(in, nullptr, true, true);  // comments allowed
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

}  // namespace

json resolve_config(const std::string& path, const Overrides& flags) {
  json cfg = default_config();
  if (!path.empty()) {
    const json file = load(path);
    check_keys(file);
    // The expansion point is given either in (z1, z2, sigma) or in (q, p, omega);
    // a file value replaces the default instead of merging with it.
    if (file.contains("map") && file["map"].contains("expansion")) cfg["map"].erase("expansion");
    cfg.merge_patch(file);
  }
  if (flags.method) cfg["map"]["method"] = *flags.method;
  if (flags.order) {
    cfg["map"]["order"] = *flags.order;
    cfg["table"]["p"] = *flags.order;
  }
  if (flags.tol) {
    cfg["integrator"]["mode"] = "adaptive";
    cfg["integrator"]["tol"] = *flags.tol;
  }
  if (flags.threads) cfg["scan"]["threads"] = *flags.threads;
  return cfg;
}

IntegratorConfig integrator_from(const json& cfg) {
  const json& s = cfg.at("integrator");
  const auto mode = get<std::string>(s, "integrator", "mode");
  IntegratorConfig out;
  if (mode == "fixed") {
    const auto ns = get<std::size_t>(s, "integrator", "ns");
    if (ns < 1) throw ConfigError("integrator.ns must be >= 1");
    out = IntegratorConfig::fixed(ns);
  } else if (mode == "adaptive") {
    const auto tol = get<double>(s, "integrator", "tol");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("integrator.tol must be > 0");
    const auto norm = get<std::string>(s, "integrator", "norm");
    if (norm != "absolute" && norm != "mixed") throw ConfigError("integrator.norm must be absolute or mixed");
    out = IntegratorConfig::adaptive(tol, norm == "mixed" ? ErrorNorm::mixed : ErrorNorm::absolute);
  } else {
    throw ConfigError("integrator.mode must be fixed or adaptive");
  }
  return out;
}

duffing::ExpansionPoint expansion_from(const json& cfg) {
  const json& e = cfg.at("map").at("expansion");
  if (!e.is_object()) throw ConfigError("map.expansion must be an object");
  duffing::ExpansionPoint at;
  if (e.contains("omega")) {
    const auto omega = get<double>(e, "map.expansion", "omega");
    if (!(omega > 0.0)) throw ConfigError("map.expansion.omega must be > 0");
    at = duffing::ExpansionPoint::from_original(get<double>(e, "map.expansion", "q"),
                                                get<double>(e, "map.expansion", "p"), omega);
  } else {
    at = {get<double>(e, "map.expansion", "z1"), get<double>(e, "map.expansion", "z2"),
          get<double>(e, "map.expansion", "sigma")};
  }
  if (!(at.sigma > 0.0) || !std::isfinite(at.z1) || !std::isfinite(at.z2)) {
    throw ConfigError("map.expansion needs finite coordinates and sigma > 0");
  }
  return at;
}

duffing::SolveMethod method_from(const json& cfg) {
  const auto m = get<std::string>(cfg.at("map"), "map", "method");
  if (m == "forward") return duffing::SolveMethod::forward;
  if (m == "backward") return duffing::SolveMethod::backward;
  throw ConfigError("map.method must be forward or backward");
}

PolynomialSystem polynomial_system_from(const json& system) {
  const auto dim = get<std::size_t>(system, "system", "dim");
  if (dim < 1) throw ConfigError("system.dim must be >= 1");
  PolynomialSystem ps(dim);
  const json terms = system.value("terms", json::array());
  if (!terms.is_array()) throw ConfigError("system.terms must be an array");
  for (const auto& t : terms) {
    const auto row = get<std::size_t>(t, "system.terms[]", "row");
    if (row < 1 || row > dim) throw ConfigError("system.terms[].row must lie in 1..dim");
    TimedTerm term;
    term.coeff = get<double>(t, "system.terms[]", "coeff");
    term.exponents = get<std::vector<unsigned>>(t, "system.terms[]", "exponents");
    if (term.exponents.size() != dim) throw ConfigError("system.terms[].exponents must have dim entries");
    try {
      term.factor = parse_time_factor(t.value("time", std::string("one")));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("system.terms[].time: ") + e.what());
    }
    ps.add_term(row - 1, term);
  }
  return ps;
}

std::vector<double> omega_grid_from(const json& section) {
  const json& o = section.at("omega");
  std::vector<double> grid;
  if (o.is_array()) {
    grid = get<std::vector<double>>(section, "scan", "omega");
  } else if (o.is_object()) {
    const auto from = get<double>(o, "scan.omega", "from");
    const auto to = get<double>(o, "scan.omega", "to");
    const auto step = get<double>(o, "scan.omega", "step");
    if (!(step > 0.0) || !(to >= from) || !(from > 0.0)) {
      throw ConfigError("scan.omega needs 0 < from <= to and step > 0");
    }
    grid = duffing::omega_grid(from, to, step);
  } else {
    throw ConfigError("scan.omega must be a list or {from, to, step}");
  }
  if (grid.empty()) throw ConfigError("scan.omega is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) throw ConfigError("scan.omega values must be > 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("scan.omega must be strictly ascending");
  }
  if (section.value("descending", false)) std::reverse(grid.begin(), grid.end());
  return grid;
}

duffing::Vec2 start_from(const json& section) {
  const auto v = get<std::vector<double>>(section, "start", "start");
  if (v.size() != 2 || !std::isfinite(v[0]) || !std::isfinite(v[1])) {
    throw ConfigError("start must be a finite [q, p] pair");
  }
  return {v[0], v[1]};
}

std::string config_line(const json& cfg) { return cfg.dump(); }

}  // namespace jetmap::cli

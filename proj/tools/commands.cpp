#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "config.hpp"
#include "jetmap/duffing.hpp"
#include "jetmap/io.hpp"
#include "jetmap/monomial_table.hpp"
#include "jetmap/variational.hpp"

namespace jetmap::cli {

using nlohmann::json;
using io::format_double;

namespace {

// Collects the whole document and writes it in one go, so a failed run
// leaves no half-written file behind.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("write to " + path + " failed");
}

// Status lines go to stdout unless stdout carries the data.
std::ostream& status(const std::string& out) { return out.empty() ? std::cerr : std::cout; }

std::string csv_header(const json& cfg, const char* command) {
  return std::string("# command: ") + command + "\n# config: " + config_line(cfg) + "\n";
}

std::size_t positive(const json& section, const char* name, const char* key) {
  const auto v = get<long long>(section, name, key);
  if (v < 1) throw ConfigError(std::string(name) + "." + key + " must be >= 1");
  return static_cast<std::size_t>(v);
}

std::size_t map_order(const json& cfg) { return positive(cfg.at("map"), "map", "order"); }

duffing::DuffingParams duffing_params(const json& cfg, double omega = 1.0) {
  const json& d = cfg.at("duffing");
  duffing::DuffingParams p{get<double>(d, "duffing", "beta"), get<double>(d, "duffing", "eps"), omega};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

TaylorMap build_map(const json& cfg, duffing::SolveMethod method) {
  const json& system = cfg.at("system");
  const auto kind = get<std::string>(system, "system", "kind");
  const auto icfg = integrator_from(cfg);
  const std::size_t p = map_order(cfg);
  if (kind == "duffing") {
    const auto params = duffing_params(cfg);
    return duffing::stroboscopic_taylor_map(params.beta, params.eps, expansion_from(cfg), p, icfg, method);
  }
  if (kind == "polynomial") {
    const auto ps = polynomial_system_from(system);
    const auto z0 = get<std::vector<double>>(system, "system", "initial");
    if (z0.size() != ps.dim()) throw ConfigError("system.initial must have dim entries");
    const double ti = system.value("t_i", 0.0);
    const double tf = get<double>(system, "system", "t_f");
    const auto table = MonomialTable::build(ps.dim(), p);
    const OdeSystem ode = ps.to_ode();
    if (method == duffing::SolveMethod::backward) return backward_solve(ode, z0, ti, tf, table, icfg);
    return forward_solve(ode, z0, ti, tf, table, icfg);
  }
  throw ConfigError("system.kind must be duffing or polynomial");
}

std::shared_ptr<const TaylorMap> scan_map(const json& cfg) {
  const auto file = get<std::string>(cfg.at("map"), "map", "file");
  if (file.empty()) {
    if (get<std::string>(cfg.at("system"), "system", "kind") != "duffing") {
      throw ConfigError("a taylor source needs system.kind = duffing");
    }
    return std::make_shared<const TaylorMap>(build_map(cfg, method_from(cfg)));
  }
  std::ifstream in(file);
  if (!in) throw IoError("cannot read map file " + file);
  try {
    return std::make_shared<const TaylorMap>(io::taylor_map_from_json(json::parse(in)));
  } catch (const json::exception& e) {
    throw ConfigError("map file " + file + ": " + e.what());
  }
}

std::unique_ptr<duffing::MapSource> map_source(const json& cfg, const json& section, const char* name) {
  const auto source = get<std::string>(section, name, "source");
  if (source == "exact") {
    const auto p = duffing_params(cfg);
    return std::make_unique<duffing::ExactMapSource>(p.beta, p.eps, integrator_from(cfg));
  }
  if (source == "taylor") return std::make_unique<duffing::TaylorMapSource>(scan_map(cfg));
  throw ConfigError(std::string(name) + ".source must be exact or taylor");
}

}  // namespace

int cmd_table(const json& cfg, const std::string& out) {
  const json& t = cfg.at("table");
  const auto m = positive(t, "table", "m");
  const auto p = get<long long>(t, "table", "p");
  if (p < 0) throw ConfigError("table.p must be >= 0");
  TablePtr table;
  try {
    table = MonomialTable::build(m, static_cast<std::size_t>(p));
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  std::ostringstream s;
  s << csv_header(cfg, "table") << "rank,degree";
  for (std::size_t i = 1; i <= m; ++i) s << ",e" << i;
  s << "\n";
  for (Rank r = 1; r <= table->size(); ++r) {
    s << r << "," << table->degree_of(r);
    for (unsigned e : table->unrank(r)) s << "," << e;
    s << "\n";
  }
  write_output(out, s.str());
  status(out) << "table m=" << m << " p=" << p << ": " << table->size() << " monomials\n";
  return 0;
}

int cmd_expand(const json& cfg, const std::string& out, bool compare) {
  const auto method = method_from(cfg);
  const TaylorMap map = build_map(cfg, method);
  json doc = io::taylor_map_to_json(map);
  doc["config"] = cfg;
  double diff = 0.0;
  if (compare) {
    const auto other = method == duffing::SolveMethod::forward ? duffing::SolveMethod::backward
                                                               : duffing::SolveMethod::forward;
    diff = max_abs_difference(map, build_map(cfg, other));
    doc["comparison"] = {{"other_method", other == duffing::SolveMethod::forward ? "forward" : "backward"},
                         {"max_abs_difference", diff}};
  }
  write_output(out, doc.dump(1) + "\n");

  auto& s = status(out);
  s << "order " << map.order() << ", " << map.table()->size() << " coefficients per row\n";
  s << "design endpoint:";
  for (double x : map.design_endpoint) s << " " << format_double(x);
  s << "\n";
  if (compare) s << "forward vs backward max abs difference: " << format_double(diff) << "\n";
  return 0;
}

int cmd_scan(const json& cfg, const std::string& out) {
  const json& sc = cfg.at("scan");
  const auto grid = omega_grid_from(sc);
  duffing::ScanOptions opts;
  opts.transient = positive(sc, "scan", "transient");
  opts.record = positive(sc, "scan", "record");
  opts.start = start_from(sc);
  opts.threads = static_cast<unsigned>(positive(sc, "scan", "threads"));
  const auto seed = get<std::string>(sc, "scan", "seed");
  if (seed == "continuation") {
    opts.seed = duffing::SeedPolicy::continuation;
  } else if (seed == "fixed") {
    opts.seed = duffing::SeedPolicy::fixed;
  } else {
    throw ConfigError("scan.seed must be continuation or fixed");
  }
  const auto source = map_source(cfg, sc, "scan");
  const auto res = duffing::feigenbaum_scan(*source, grid, opts);

  std::ostringstream csv, failures;
  csv << csv_header(cfg, "scan") << "omega,index,q,p\n";
  failures << csv_header(cfg, "scan") << "omega,error\n";
  std::size_t ok = 0, failed = 0;
  for (const auto& row : res.rows) {
    if (row.samples.empty()) {
      ++failed;
      failures << format_double(row.omega) << ",\"" << row.error << "\"\n";
      continue;
    }
    ++ok;
    for (std::size_t i = 0; i < row.samples.size(); ++i) {
      csv << format_double(row.omega) << "," << i << "," << format_double(row.samples[i][0]) << ","
          << format_double(row.samples[i][1]) << "\n";
    }
  }
  write_output(out, csv.str());
  if (!out.empty()) {
    write_output(out + ".failures.csv", failures.str());
  } else if (failed > 0) {
    std::cerr << failures.str();
  }
  status(out) << "scan (" << res.source << "): " << ok << " of " << res.rows.size() << " omega values recorded";
  if (failed > 0) status(out) << ", " << failed << " diverged";
  status(out) << "\n";
  return ok > 0 ? 0 : 2;
}

int cmd_attract(const json& cfg, const std::string& out) {
  const json& at = cfg.at("attract");
  const auto omega = get<double>(at, "attract", "omega");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("attract.omega must be > 0");
  const auto transient = get<long long>(at, "attract", "transient");
  if (transient < 0) throw ConfigError("attract.transient must be >= 0");
  const auto count = positive(at, "attract", "count");
  const auto source = map_source(cfg, at, "attract");
  const auto pts =
      duffing::attractor_sample(*source, omega, start_from(at), static_cast<std::size_t>(transient), count);

  std::ostringstream csv;
  csv << csv_header(cfg, "attract") << "q,p\n";
  for (const auto& x : pts) csv << format_double(x[0]) << "," << format_double(x[1]) << "\n";
  write_output(out, csv.str());
  const auto k = duffing::detect_period(pts);
  status(out) << "attract (" << source->kind() << ") omega=" << format_double(omega) << ": " << pts.size()
              << " points, spread " << format_double(duffing::spread(pts)) << ", "
              << (k ? "period " + std::to_string(*k) : std::string("no period up to 64")) << "\n";
  return 0;
}

}  // namespace jetmap::cli

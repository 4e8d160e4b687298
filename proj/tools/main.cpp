// jetmap: build monomial tables and Taylor maps, scan and sample the Duffing
// stroboscopic map, and run the golden-value suite.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure
// (divergence, step underflow, Newton failure, failed golden checks),
// 3 I/O error.
#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "jetmap/errors.hpp"

using namespace jetmap;
using namespace jetmap::cli;

int main(int argc, char** argv) {
  CLI::App app{"Taylor maps of polynomial ODEs and the Duffing stroboscopic map"};
  app.require_subcommand(1);

  std::string config_path, out;
  Overrides flags;
  std::string method;
  std::size_t order = 0;
  double tol = 0.0;
  unsigned threads = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output file (default stdout)");
    sub->add_option("--method", method, "forward or backward")->check(CLI::IsMember({"forward", "backward"}));
    sub->add_option("--order", order, "truncation order");
    sub->add_option("--tol", tol, "adaptive integrator tolerance (switches to adaptive mode)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", threads, "worker threads for fixed-seed scans")->check(CLI::PositiveNumber);
  };

  std::size_t vars = 0;
  auto* table = app.add_subcommand("table", "write the monomial listing as CSV");
  common(table);
  table->add_option("-m,--vars", vars, "number of variables")->check(CLI::PositiveNumber);

  bool compare = false;
  auto* expand = app.add_subcommand("expand", "compute a Taylor map and write it as JSON");
  common(expand);
  expand->add_flag("--compare", compare, "also run the other method and report the difference");

  auto* scan = app.add_subcommand("scan", "Feigenbaum scan over omega, CSV omega,index,q,p");
  common(scan);

  auto* attract = app.add_subcommand("attract", "sample the attractor at one omega, CSV q,p");
  common(attract);

  VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "run the golden-value suite");
  verify->add_flag("--list", vopts.list, "print the check inventory without running it");
  verify->add_option("--tol", vopts.tol, "tolerance for adaptive integrations")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (verify->parsed()) return cmd_verify(vopts);

    const CLI::App* active = app.get_subcommands().front();
    if (active->count("--method") > 0) flags.method = method;
    if (active->count("--order") > 0) flags.order = order;
    if (active->count("--tol") > 0) flags.tol = tol;
    if (active->count("--threads") > 0) flags.threads = threads;
    auto cfg = resolve_config(config_path, flags);
    if (table->count("--vars") > 0) cfg["table"]["m"] = vars;

    if (table->parsed()) return cmd_table(cfg, out);
    if (expand->parsed()) return cmd_expand(cfg, out, compare);
    if (scan->parsed()) return cmd_scan(cfg, out);
    if (attract->parsed()) return cmd_attract(cfg, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const DivergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const StiffnessError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const NoConvergence& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const SingularJacobian& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range and length_error all come from
    // preconditions on configured values.
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

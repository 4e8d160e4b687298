#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetmap/duffing.hpp"
#include "jetmap/ode.hpp"
#include "jetmap/polynomial_system.hpp"

namespace jetmap::cli {

// Bad or inconsistent configuration; exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File or stream failure; exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Values given on the command line. Unset fields leave the file value alone.
struct Overrides {
  std::optional<std::string> method;
  std::optional<std::size_t> order;
  std::optional<double> tol;
  std::optional<unsigned> threads;
};

// Built-in defaults, then the config file, then the flags.
nlohmann::json resolve_config(const std::string& path, const Overrides& flags);
nlohmann::json default_config();

// Typed accessors over the resolved tree. All of them throw ConfigError.
IntegratorConfig integrator_from(const nlohmann::json& cfg);
duffing::ExpansionPoint expansion_from(const nlohmann::json& cfg);
duffing::SolveMethod method_from(const nlohmann::json& cfg);
PolynomialSystem polynomial_system_from(const nlohmann::json& system);
std::vector<double> omega_grid_from(const nlohmann::json& section);
duffing::Vec2 start_from(const nlohmann::json& section);

template <class T>
T get(const nlohmann::json& obj, const char* section, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string(section) + "." + key + " is missing or has the wrong type");
  }
}

// One line, keys sorted, numbers in shortest round-trip form.
std::string config_line(const nlohmann::json& cfg);

}  // namespace jetmap::cli

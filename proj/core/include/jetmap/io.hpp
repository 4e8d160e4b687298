#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "jetmap/jet.hpp"
#include "jetmap/variational.hpp"

namespace jetmap::io {

// Shortest decimal that round-trips (at most 17 significant digits).
std::string format_double(double x);

// {m, p, coeffs:[{r, exponents, value}]}; zero coefficients are dropped when
// suppress_zeros is set.
nlohmann::json jet_to_json(const Jet& u, bool suppress_zeros = false);
Jet jet_from_json(const nlohmann::json& j, const TablePtr& table = nullptr);

// {m_dynamical, n_params, p, t_i, t_f, expansion_point, design_endpoint,
//  rows:[{var, coeffs:[{r, exponents, value}]}]}
nlohmann::json taylor_map_to_json(const TaylorMap& map, bool suppress_zeros = false);
TaylorMap taylor_map_from_json(const nlohmann::json& j);

}  // namespace jetmap::io

#include "jetmap/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace jetmap::io {
namespace {

nlohmann::json coeff_list(const Jet& u, bool suppress_zeros) {
  const MonomialTable& t = *u.table();
  auto list = nlohmann::json::array();
  for (Rank r = 1; r <= t.size(); ++r) {
    if (suppress_zeros && u[r] == 0.0) continue;
    list.push_back({{"r", r}, {"exponents", t.unrank(r)}, {"value", u[r]}});
  }
  return list;
}

void fill_coeffs(Jet& u, const nlohmann::json& list) {
  const MonomialTable& t = *u.table();
  for (const auto& c : list) {
    const Rank r = c.at("r").get<Rank>();
    if (r < 1 || r > t.size()) throw std::out_of_range("json: rank out of range");
    if (c.contains("exponents")) {
      const auto e = c.at("exponents").get<std::vector<unsigned>>();
      if (e.size() != t.vars() || t.rank_of(e) != r) {
        throw std::invalid_argument("json: exponents do not match rank " + std::to_string(r));
      }
    }
    u[r] = c.at("value").get<double>();
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::json jet_to_json(const Jet& u, bool suppress_zeros) {
  return {{"m", u.table()->vars()}, {"p", u.table()->order()}, {"coeffs", coeff_list(u, suppress_zeros)}};
}

Jet jet_from_json(const nlohmann::json& j, const TablePtr& table) {
  const auto m = j.at("m").get<std::size_t>();
  const auto p = j.at("p").get<std::size_t>();
  TablePtr t = table;
  if (!t) {
    t = MonomialTable::build(m, p);
  } else if (t->vars() != m || t->order() != p) {
    throw TableMismatch("json: jet shape does not match the given table");
  }
  Jet u(t);
  fill_coeffs(u, j.at("coeffs"));
  return u;
}

nlohmann::json taylor_map_to_json(const TaylorMap& map, bool suppress_zeros) {
  auto rows = nlohmann::json::array();
  for (std::size_t a = 0; a < map.rows.size(); ++a) {
    rows.push_back({{"var", a + 1}, {"coeffs", coeff_list(map.rows[a], suppress_zeros)}});
  }
  return {{"m_dynamical", map.m_dynamical},
          {"n_params", map.n_params},
          {"p", map.order()},
          {"t_i", map.t_i},
          {"t_f", map.t_f},
          {"expansion_point", map.expansion_point},
          {"design_endpoint", map.design_endpoint},
          {"rows", rows}};
}

TaylorMap taylor_map_from_json(const nlohmann::json& j) {
  TaylorMap map;
  map.m_dynamical = j.at("m_dynamical").get<std::size_t>();
  map.n_params = j.at("n_params").get<std::size_t>();
  map.t_i = j.at("t_i").get<double>();
  map.t_f = j.at("t_f").get<double>();
  map.expansion_point = j.at("expansion_point").get<std::vector<double>>();
  map.design_endpoint = j.at("design_endpoint").get<std::vector<double>>();
  const std::size_t dim = map.dim();
  if (dim == 0 || map.expansion_point.size() != dim || map.design_endpoint.size() != dim) {
    throw std::invalid_argument("json: inconsistent map dimensions");
  }
  const auto table = MonomialTable::build(dim, j.at("p").get<std::size_t>());
  map.rows.assign(dim, Jet(table));
  const auto& rows = j.at("rows");
  if (rows.size() != dim) throw std::invalid_argument("json: expected one row per variable");
  for (const auto& row : rows) {
    const auto a = row.at("var").get<std::size_t>();
    if (a < 1 || a > dim) throw std::out_of_range("json: row variable out of range");
    fill_coeffs(map.rows[a - 1], row.at("coeffs"));
  }
  return map;
}

}  // namespace jetmap::io

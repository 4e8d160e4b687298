#include "jetmap/variational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "jetmap/polynomial.hpp"

namespace jetmap {
namespace {

void require_table_matches(const OdeSystem& system, std::span<const double> zd,
                           const TablePtr& table) {
  if (!table) throw std::invalid_argument("variational: null table");
  if (table->vars() != system.dim()) {
    throw std::invalid_argument("variational: table has " + std::to_string(table->vars()) +
                                " variables, system has " + std::to_string(system.dim()));
  }
  if (zd.size() != system.dim()) throw std::invalid_argument("variational: design point has wrong dimension");
  if (table->order() == 0) throw std::invalid_argument("variational: order must be >= 1");
}

JetVector identity_jets(std::span<const double> zd, const TablePtr& table) {
  JetVector y;
  y.reserve(zd.size());
  for (std::size_t a = 0; a < zd.size(); ++a) {
    auto x = Jet::variable(table, a + 1);
    x[1] = zd[a];
    y.push_back(std::move(x));
  }
  return y;
}

Jet without_constant(Jet u) {
  u[1] = 0.0;
  return u;
}

}  // namespace

std::vector<double> TaylorMap::apply(std::span<const double> zeta) const {
  if (zeta.size() != dim()) throw std::invalid_argument("TaylorMap::apply: wrong dimension");
  std::vector<double> out(rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) out[a] = eval(rows[a], zeta);
  return out;
}

double max_abs_difference(const TaylorMap& a, const TaylorMap& b) {
  if (a.rows.size() != b.rows.size()) throw std::invalid_argument("maps have different dimension");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows.size(); ++i) m = std::max(m, max_abs(a.rows[i] - b.rows[i]));
  return m;
}

RhsExpansion expand_rhs(const OdeSystem& system, std::span<const double> zd, double t,
                        const TablePtr& table) {
  require_table_matches(system, zd, table);
  const JetVector y = identity_jets(zd, table);
  RhsExpansion e;
  e.jets = system(std::span<const Jet>(y), t);
  e.design_value.reserve(e.jets.size());
  for (const auto& j : e.jets) e.design_value.push_back(j.constant_term());
  return e;
}

TaylorMap forward_solve(const OdeSystem& system, std::span<const double> zd0, double t_i,
                        double t_f, const TablePtr& table, const IntegratorConfig& cfg) {
  require_table_matches(system, zd0, table);
  auto res = integrate(system, identity_jets(zd0, table), t_i, t_f, cfg);

  TaylorMap map;
  map.m_dynamical = system.dynamical_dim();
  map.n_params = system.param_count();
  map.t_i = t_i;
  map.t_f = t_f;
  map.expansion_point.assign(zd0.begin(), zd0.end());
  map.rows = std::move(res.state);
  const JetVector id = identity_jets(zd0, table);
  for (std::size_t a = map.m_dynamical; a < map.dim(); ++a) map.rows[a] = id[a];
  for (const auto& row : map.rows) map.design_endpoint.push_back(row.constant_term());
  return map;
}

CCoefficientTable::CCoefficientTable(TablePtr table) : table_(std::move(table)) {
  const MonomialTable& t = *table_;
  const std::size_t m = t.vars();
  const unsigned p = static_cast<unsigned>(t.order());
  std::vector<unsigned> base(m), target(m);
  for (Rank r1 = 2; r1 <= t.size(); ++r1) {
    const auto j1 = t.exponents(r1);
    const unsigned d1 = degree(j1);
    for (std::size_t b = 0; b < m; ++b) {
      if (j1[b] == 0) continue;
      std::copy(j1.begin(), j1.end(), base.begin());
      --base[b];
      for (Rank r2 = 2; r2 <= t.size(); ++r2) {
        const auto j2 = t.exponents(r2);
        if (d1 - 1 + degree(j2) > p) break;  // degrees are non-decreasing in rank
        for (std::size_t a = 0; a < m; ++a) target[a] = base[a] + j2[a];
        entries_.push_back({t.rank_of(target), b + 1, r1, r2, j1[b]});
      }
    }
  }
  std::sort(entries_.begin(), entries_.end(), [](const CEntry& x, const CEntry& y) {
    return std::tie(x.r, x.b, x.r1, x.r2) < std::tie(y.r, y.b, y.r1, y.r2);
  });
}

unsigned CCoefficientTable::at(Rank r, std::size_t b, Rank r1, Rank r2) const {
  const CEntry key{r, b, r1, r2, 0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, [](const CEntry& x, const CEntry& y) {
    return std::tie(x.r, x.b, x.r1, x.r2) < std::tie(y.r, y.b, y.r1, y.r2);
  });
  if (it != entries_.end() && it->r == r && it->b == b && it->r1 == r1 && it->r2 == r2) {
    return it->value;
  }
  return 0;
}

CCoefficientTable c_coefficients(const TablePtr& table) {
  if (!table) throw std::invalid_argument("c_coefficients: null table");
  return CCoefficientTable(table);
}

JetVector forward_variational_rhs(std::span<const Jet> g, std::span<const Jet> h) {
  if (g.empty() || g.size() != h.size()) throw std::invalid_argument("forward_variational_rhs: size mismatch");
  require_common_table(g);
  require_common_table(h);
  require_same_table(g[0], h[0]);
  JetVector zeta;
  zeta.reserve(h.size());
  for (const auto& row : h) zeta.push_back(without_constant(row));
  JetVector out;
  out.reserve(g.size());
  for (const auto& ga : g) out.push_back(polyval_on_jets(to_polynomial(without_constant(ga)), zeta));
  return out;
}

JetVector backward_variational_rhs(const CCoefficientTable& c, std::span<const Jet> g,
                                   std::span<const Jet> h) {
  if (g.empty() || h.empty()) throw std::invalid_argument("backward_variational_rhs: empty input");
  require_common_table(g);
  require_common_table(h);
  require_same_table(g[0], h[0]);
  if (!c.table()->same_shape(*g[0].table())) throw TableMismatch("C table built over a different table");
  JetVector out;
  out.reserve(h.size());
  for (const auto& ha : h) {
    Jet d(ha.table());
    for (const auto& e : c.entries()) {
      d[e.r] -= static_cast<double>(e.value) * g[e.b - 1][e.r2] * ha[e.r1];
    }
    out.push_back(std::move(d));
  }
  return out;
}

TaylorMap backward_solve(const OdeSystem& system, std::span<const double> zd0, double t_i,
                         double t_f, const TablePtr& table, const IntegratorConfig& cfg) {
  require_table_matches(system, zd0, table);
  const std::size_t dim = system.dim();
  const std::size_t m = system.dynamical_dim();
  const std::size_t L = table->size();

  auto design = integrate(system, std::vector<double>(zd0.begin(), zd0.end()), t_i, t_f, cfg);
  const std::vector<double> zd_final = design.state;

  // State: design orbit, then h^r_a for dynamical a and ranks 2..L.
  std::vector<double> y(dim + m * (L - 1), 0.0);
  std::copy(zd_final.begin(), zd_final.end(), y.begin());
  for (std::size_t a = 0; a < m; ++a) y[dim + a * (L - 1) + a] = 1.0;  // rank a + 2

  const CCoefficientTable c = c_coefficients(table);
  auto rhs = [&](std::span<const double> s, double t) {
    const RhsExpansion e = expand_rhs(system, s.first(dim), t, table);
    std::vector<double> d(s.size(), 0.0);
    std::copy(e.design_value.begin(), e.design_value.end(), d.begin());
    for (const auto& entry : c.entries()) {
      if (entry.b > m) continue;  // lifted parameters have no forcing
      const double w = static_cast<double>(entry.value) * e.jets[entry.b - 1][entry.r2];
      if (w == 0.0) continue;
      for (std::size_t a = 0; a < m; ++a) {
        const std::size_t base = dim + a * (L - 1);
        d[base + entry.r - 2] -= w * s[base + entry.r1 - 2];
      }
    }
    return d;
  };
  auto back = integrate(rhs, std::move(y), t_f, t_i, cfg);

  TaylorMap map;
  map.m_dynamical = m;
  map.n_params = system.param_count();
  map.t_i = t_i;
  map.t_f = t_f;
  map.expansion_point.assign(zd0.begin(), zd0.end());
  map.design_endpoint = zd_final;
  const JetVector id = identity_jets(zd0, table);
  for (std::size_t a = 0; a < dim; ++a) {
    if (a >= m) {
      map.rows.push_back(id[a]);
      continue;
    }
    Jet row(table);
    row[1] = zd_final[a];
    for (Rank r = 2; r <= L; ++r) row[r] = back.state[dim + a * (L - 1) + r - 2];
    map.rows.push_back(std::move(row));
  }
  return map;
}

std::vector<double> LiftedSystem::initial_state(std::span<const double> z0) const {
  std::vector<double> s(z0.begin(), z0.end());
  s.insert(s.end(), parameter_values.begin(), parameter_values.end());
  if (s.size() != system.dim()) throw std::invalid_argument("initial_state: wrong dimension");
  return s;
}

ParametricSystem::ParametricSystem(std::size_t dim, std::size_t params, ScalarRhs scalar, JetRhs jet)
    : dim_(dim), params_(params), scalar_(std::move(scalar)), jet_(std::move(jet)) {
  if (dim_ == 0) throw std::invalid_argument("ParametricSystem: dimension must be >= 1");
}

LiftedSystem lift_parameters(const ParametricSystem& system, std::span<const double> values) {
  if (values.size() != system.params()) throw std::invalid_argument("lift_parameters: wrong parameter count");
  const std::size_t m = system.dim();
  const std::size_t n = system.params();
  auto scalar = [system, m, n](std::span<const double> z, double t) {
    auto d = system.scalar()(z.first(m), z.subspan(m, n), t);
    d.resize(m + n, 0.0);
    return d;
  };
  auto jet = [system, m, n](std::span<const Jet> z, double t) {
    auto d = system.jet()(z.first(m), z.subspan(m, n), t);
    for (std::size_t i = 0; i < n; ++i) d.push_back(Jet(z[0].table()));
    return d;
  };
  return {OdeSystem(m + n, scalar, jet, n), std::vector<double>(values.begin(), values.end())};
}

OdeSystem bind_parameters(const ParametricSystem& system, std::span<const double> values) {
  if (values.size() != system.params()) throw std::invalid_argument("bind_parameters: wrong parameter count");
  std::vector<double> lambda(values.begin(), values.end());
  auto scalar = [system, lambda](std::span<const double> z, double t) {
    return system.scalar()(z, lambda, t);
  };
  auto jet = [system, lambda](std::span<const Jet> z, double t) {
    JetVector l;
    for (double v : lambda) l.push_back(Jet::constant(z[0].table(), v));
    return system.jet()(z, l, t);
  };
  return OdeSystem(system.dim(), scalar, jet);
}

}  // namespace jetmap

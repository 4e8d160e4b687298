#include "jetmap/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jetmap/algebra.hpp"
#include "jetmap/errors.hpp"

namespace jetmap {

Jet::Jet(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw std::invalid_argument("Jet: null table");
  c_.assign(table_->size(), 0.0);
}

Jet::Jet(TablePtr table, std::vector<double> coeffs)
    : table_(std::move(table)), c_(std::move(coeffs)) {
  if (!table_) throw std::invalid_argument("Jet: null table");
  if (c_.size() != table_->size()) {
    throw std::invalid_argument("Jet: expected " + std::to_string(table_->size()) +
                                " coefficients, got " + std::to_string(c_.size()));
  }
}

Jet Jet::constant(TablePtr table, double c) {
  Jet u(std::move(table));
  u.c_[0] = c;
  return u;
}

Jet Jet::variable(TablePtr table, std::size_t a) {
  if (!table) throw std::invalid_argument("Jet: null table");
  if (a < 1 || a > table->vars()) throw std::out_of_range("Jet::variable: index out of range");
  if (table->order() == 0) {
    throw std::invalid_argument("Jet::variable: order 0 table has no degree-1 slot");
  }
  Jet u(std::move(table));
  u.c_[a] = 1.0;
  return u;
}

double Jet::coeff(Rank r) const {
  if (r < 1 || r > c_.size()) throw std::out_of_range("Jet::coeff: rank out of range");
  return c_[r - 1];
}

void require_same_table(const Jet& u, const Jet& v) {
  if (u.table() == v.table()) return;
  if (!u.table() || !v.table() || !u.table()->same_shape(*v.table())) {
    throw TableMismatch("jets built over different monomial tables");
  }
}

void require_common_table(std::span<const Jet> v) {
  for (std::size_t i = 1; i < v.size(); ++i) require_same_table(v[0], v[i]);
}

Jet& Jet::operator+=(const Jet& v) {
  require_same_table(*this, v);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += v.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& v) {
  require_same_table(*this, v);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= v.c_[i];
  return *this;
}

Jet& Jet::add_scaled(double s, const Jet& v) {
  require_same_table(*this, v);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += s * v.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& x : c_) x *= s;
  return *this;
}

Jet& Jet::operator+=(double s) {
  c_.at(0) += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  c_.at(0) -= s;
  return *this;
}

Jet add(const Jet& u, const Jet& v) { return u + v; }

Jet scale(double c, const Jet& u) { return c * u; }

Jet prod(const Jet& u, const Jet& v) {
  require_same_table(u, v);
  const MonomialTable& t = *u.table();
  const auto uc = u.coeffs();
  const auto vc = v.coeffs();
  std::vector<double> w(t.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto box = t.box0(k);
    double s = 0.0;
    for (std::size_t i = 0; i < box.lo.size(); ++i) s += uc[box.lo[i]] * vc[box.hi[i]];
    w[k] = s;
  }
  return Jet(u.table(), std::move(w));
}

Jet power(const Jet& u, unsigned n) {
  Jet result = Jet::constant(u.table(), 1.0);
  for (unsigned i = 0; i < n; ++i) result = prod(u, result);
  return result;
}

double eval(const Jet& u, std::span<const double> x) {
  const MonomialTable& t = *u.table();
  if (x.size() != t.vars()) throw std::invalid_argument("eval: point has wrong dimension");
  const auto c = u.coeffs();
  // Monomials are generated along the parent chain, so one pass suffices.
  std::vector<double> g(t.size());
  g[0] = 1.0;
  double s = c[0];
  for (std::size_t r0 = 1; r0 < g.size(); ++r0) {
    g[r0] = g[t.parent0(r0)] * x[t.parent_var(r0)];
    s += c[r0] * g[r0];
  }
  return s;
}

Jet derivative(const Jet& u, std::size_t a) {
  const MonomialTable& t = *u.table();
  if (a < 1 || a > t.vars()) throw std::out_of_range("derivative: index out of range");
  Jet d(u.table());
  for (Rank r = 1; r <= t.size(); ++r) {
    const Rank up = t.raise(r, a - 1);
    if (up == 0) continue;
    d[r] = static_cast<double>(t.exponents(up)[a - 1]) * u[up];
  }
  return d;
}

double max_abs(const Jet& u) {
  double m = 0.0;
  for (double x : u.coeffs()) {
    if (std::isnan(x)) return x;
    m = std::max(m, std::fabs(x));
  }
  return m;
}

double algebra::mixed_max_abs(const Jet& e, const Jet& y) {
  require_same_table(e, y);
  const auto ec = e.coeffs();
  const auto yc = y.coeffs();
  double m = 0.0;
  for (std::size_t i = 0; i < ec.size(); ++i) {
    const double v = std::fabs(ec[i]) / std::max(1.0, std::fabs(yc[i]));
    if (std::isnan(v)) return v;
    m = std::max(m, v);
  }
  return m;
}

bool all_finite(const Jet& u) {
  for (double x : u.coeffs()) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace jetmap

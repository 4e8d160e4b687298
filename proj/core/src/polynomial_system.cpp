#include "jetmap/polynomial_system.hpp"

#include <cmath>
#include <stdexcept>

namespace jetmap {

TimeFactor parse_time_factor(const std::string& s) {
  if (s == "1" || s == "one" || s.empty()) return TimeFactor::one;
  if (s == "t") return TimeFactor::t;
  if (s == "sin") return TimeFactor::sin;
  if (s == "cos") return TimeFactor::cos;
  throw std::invalid_argument("unknown time factor '" + s + "'");
}

std::string to_string(TimeFactor f) {
  switch (f) {
    case TimeFactor::one: return "1";
    case TimeFactor::t: return "t";
    case TimeFactor::sin: return "sin";
    case TimeFactor::cos: return "cos";
  }
  return "1";
}

double time_factor_value(TimeFactor f, double t) {
  switch (f) {
    case TimeFactor::one: return 1.0;
    case TimeFactor::t: return t;
    case TimeFactor::sin: return std::sin(t);
    case TimeFactor::cos: return std::cos(t);
  }
  return 1.0;
}

PolynomialSystem::PolynomialSystem(std::size_t dim) : rhs_(dim) {
  if (dim == 0) throw std::invalid_argument("PolynomialSystem: dimension must be >= 1");
}

void PolynomialSystem::add_term(std::size_t component, TimedTerm term) {
  if (component >= rhs_.size()) throw std::out_of_range("PolynomialSystem: component out of range");
  if (term.exponents.size() != rhs_.size()) {
    throw std::invalid_argument("PolynomialSystem: exponent length mismatch");
  }
  rhs_[component].push_back(std::move(term));
}

unsigned PolynomialSystem::max_degree() const {
  unsigned d = 0;
  for (const auto& comp : rhs_) {
    for (const auto& term : comp) d = std::max(d, degree(term.exponents));
  }
  return d;
}

OdeSystem PolynomialSystem::to_ode() const {
  auto rhs = rhs_;
  auto f = [rhs](auto z, double t) {
    using T = state_value_t<decltype(z)>;
    std::vector<T> out;
    out.reserve(rhs.size());
    for (const auto& comp : rhs) {
      T sum = algebra::constant_like(z[0], 0.0);
      for (const auto& term : comp) {
        T mono = algebra::constant_like(z[0], term.coeff * time_factor_value(term.factor, t));
        for (std::size_t a = 0; a < z.size(); ++a) {
          if (term.exponents[a] != 0) mono = mono * algebra::ipow(z[a], term.exponents[a]);
        }
        sum = sum + mono;
      }
      out.push_back(std::move(sum));
    }
    return out;
  };
  return OdeSystem(rhs_.size(), f);
}

}  // namespace jetmap

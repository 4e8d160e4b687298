#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jetmap/ode.hpp"

namespace jetmap {

enum class TimeFactor { one, t, sin, cos };

TimeFactor parse_time_factor(const std::string& s);
std::string to_string(TimeFactor f);
double time_factor_value(TimeFactor f, double t);

struct TimedTerm {
  double coeff = 0.0;
  TimeFactor factor = TimeFactor::one;
  std::vector<unsigned> exponents;
};

// Right-hand side given term by term: component a is
// sum_k coeff_k * factor_k(t) * z^{exponents_k}.
class PolynomialSystem {
 public:
  explicit PolynomialSystem(std::size_t dim);

  std::size_t dim() const noexcept { return rhs_.size(); }
  void add_term(std::size_t component, TimedTerm term);
  const std::vector<TimedTerm>& terms(std::size_t component) const { return rhs_.at(component); }
  unsigned max_degree() const;

  OdeSystem to_ode() const;

 private:
  std::vector<std::vector<TimedTerm>> rhs_;
};

}  // namespace jetmap

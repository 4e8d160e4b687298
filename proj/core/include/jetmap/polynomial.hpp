#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "jetmap/algebra.hpp"

namespace jetmap {

struct Term {
  double coeff = 0.0;
  std::vector<unsigned> exponents;
};

// Sparse polynomial in a fixed number of formal variables.
class Polynomial {
 public:
  explicit Polynomial(std::size_t vars, std::vector<Term> terms = {});

  std::size_t vars() const noexcept { return vars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  void add_term(double coeff, std::vector<unsigned> exponents);

  // Evaluates with the arithmetic of T; for jets this is the replacement of
  // every real variable by a jet.
  template <class T>
  T evaluate(std::span<const T> args) const {
    if (args.size() != vars_) throw std::invalid_argument("Polynomial: wrong argument count");
    if (args.empty()) throw std::invalid_argument("Polynomial: needs at least one argument");
    T sum = algebra::constant_like(args[0], 0.0);
    for (const auto& term : terms_) {
      T mono = algebra::constant_like(args[0], term.coeff);
      for (std::size_t a = 0; a < vars_; ++a) {
        if (term.exponents[a] != 0) mono = mono * algebra::ipow(args[a], term.exponents[a]);
      }
      sum = sum + mono;
    }
    return sum;
  }

 private:
  std::size_t vars_;
  std::vector<Term> terms_;
};

// The polynomial whose coefficients are those of u.
Polynomial to_polynomial(const Jet& u);

// Requires a common table across args.
Jet polyval_on_jets(const Polynomial& f, std::span<const Jet> args);

}  // namespace jetmap

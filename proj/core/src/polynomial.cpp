#include "jetmap/polynomial.hpp"

namespace jetmap {

Polynomial::Polynomial(std::size_t vars, std::vector<Term> terms) : vars_(vars) {
  if (vars_ == 0) throw std::invalid_argument("Polynomial: needs at least one variable");
  for (auto& t : terms) add_term(t.coeff, std::move(t.exponents));
}

void Polynomial::add_term(double coeff, std::vector<unsigned> exponents) {
  if (exponents.size() != vars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
  terms_.push_back({coeff, std::move(exponents)});
}

Polynomial to_polynomial(const Jet& u) {
  const MonomialTable& t = *u.table();
  Polynomial f(t.vars());
  for (Rank r = 1; r <= t.size(); ++r) {
    if (u[r] != 0.0) f.add_term(u[r], t.unrank(r));
  }
  return f;
}

Jet polyval_on_jets(const Polynomial& f, std::span<const Jet> args) {
  require_common_table(args);
  return f.evaluate<Jet>(args);
}

}  // namespace jetmap

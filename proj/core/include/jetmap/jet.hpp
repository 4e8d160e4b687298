#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jetmap/monomial_table.hpp"

namespace jetmap {

// Truncated multivariate Taylor series: dense coefficients over the shared
// monomial table, coefficient r multiplying G_r.
class Jet {
 public:
  Jet() = default;
  explicit Jet(TablePtr table);
  Jet(TablePtr table, std::vector<double> coeffs);

  static Jet constant(TablePtr table, double c);
  // 1 at the degree-1 monomial in variable a (1-based), i.e. rank a + 1.
  static Jet variable(TablePtr table, std::size_t a);

  const TablePtr& table() const noexcept { return table_; }
  std::size_t size() const noexcept { return c_.size(); }

  // 1-based access by rank.
  double operator[](Rank r) const { return c_[r - 1]; }
  double& operator[](Rank r) { return c_[r - 1]; }
  double coeff(Rank r) const;

  std::span<const double> coeffs() const noexcept { return c_; }
  std::span<double> coeffs() noexcept { return c_; }

  double constant_term() const { return c_.at(0); }

  Jet& operator+=(const Jet& v);
  Jet& operator-=(const Jet& v);
  Jet& operator*=(double s);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  // u += s * v without a temporary.
  Jet& add_scaled(double s, const Jet& v);

 private:
  TablePtr table_;
  std::vector<double> c_;
};

using JetVector = std::vector<Jet>;

void require_same_table(const Jet& u, const Jet& v);
void require_common_table(std::span<const Jet> v);

Jet add(const Jet& u, const Jet& v);
Jet scale(double c, const Jet& u);
// W(k) = sum over the k-th box of U(r) * V(complement of r).
Jet prod(const Jet& u, const Jet& v);
// Sequential products: power(u, n) = prod(u, power(u, n - 1)).
Jet power(const Jet& u, unsigned n);
double eval(const Jet& u, std::span<const double> x);
// d/dz_a of u (a is 1-based). The top-degree coefficients of the result are 0.
Jet derivative(const Jet& u, std::size_t a);

double max_abs(const Jet& u);
bool all_finite(const Jet& u);

inline Jet operator+(Jet u, const Jet& v) { return u += v; }
inline Jet operator-(Jet u, const Jet& v) { return u -= v; }
inline Jet operator-(Jet u) { return u *= -1.0; }
inline Jet operator*(double s, Jet u) { return u *= s; }
inline Jet operator*(Jet u, double s) { return u *= s; }
inline Jet operator+(Jet u, double s) { return u += s; }
inline Jet operator+(double s, Jet u) { return u += s; }
inline Jet operator-(Jet u, double s) { return u -= s; }
inline Jet operator-(double s, Jet u) { return (u *= -1.0) += s; }
inline Jet operator*(const Jet& u, const Jet& v) { return prod(u, v); }

}  // namespace jetmap

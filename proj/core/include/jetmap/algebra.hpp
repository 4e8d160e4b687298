#pragma once

#include <algorithm>
#include <cmath>

#include "jetmap/jet.hpp"

// The operations the integrators and polynomial evaluators need from a state
// component, provided for plain doubles and for jets.
namespace jetmap::algebra {

inline double constant_like(double, double c) { return c; }
inline Jet constant_like(const Jet& proto, double c) { return Jet::constant(proto.table(), c); }

inline double ipow(double x, unsigned n) {
  double r = 1.0;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}
inline Jet ipow(const Jet& u, unsigned n) { return power(u, n); }

inline double max_abs(double x) { return std::fabs(x); }
inline double max_abs(const Jet& u) { return jetmap::max_abs(u); }

// Largest |e_i| / max(1, |y_i|) over matching coefficients.
inline double mixed_max_abs(double e, double y) { return std::fabs(e) / std::max(1.0, std::fabs(y)); }
double mixed_max_abs(const Jet& e, const Jet& y);

inline bool all_finite(double x) { return std::isfinite(x); }
inline bool all_finite(const Jet& u) { return jetmap::all_finite(u); }

}  // namespace jetmap::algebra

namespace jetmap::algebra {

// y += a * x
inline void add_scaled(double& y, double a, double x) { y += a * x; }
inline void add_scaled(Jet& y, double a, const Jet& x) { y.add_scaled(a, x); }

}  // namespace jetmap::algebra

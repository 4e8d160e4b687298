#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "jetmap/algebra.hpp"
#include "jetmap/errors.hpp"

namespace jetmap {

// Element type of the state span handed to a generic right-hand side.
template <class Z>
using state_value_t = std::remove_cvref_t<decltype(std::declval<Z>()[0])>;

// z' = f(z, t) with f polynomial in z. The right-hand side is written once as
// a generic callable and instantiated for doubles and for jets.
class OdeSystem {
 public:
  using ScalarRhs = std::function<std::vector<double>(std::span<const double>, double)>;
  using JetRhs = std::function<std::vector<Jet>(std::span<const Jet>, double)>;

  OdeSystem(std::size_t dim, ScalarRhs scalar, JetRhs jet, std::size_t param_count = 0);

  template <class F>
    requires std::is_invocable_v<const F&, std::span<const double>, double> &&
             std::is_invocable_v<const F&, std::span<const Jet>, double>
  OdeSystem(std::size_t dim, F f, std::size_t param_count = 0)
      : OdeSystem(
            dim,
            [f](std::span<const double> z, double t) { return std::vector<double>(f(z, t)); },
            [f](std::span<const Jet> z, double t) { return std::vector<Jet>(f(z, t)); },
            param_count) {}

  std::size_t dim() const noexcept { return dim_; }
  // Trailing variables that are lifted parameters (zero right-hand side).
  std::size_t param_count() const noexcept { return params_; }
  std::size_t dynamical_dim() const noexcept { return dim_ - params_; }

  std::vector<double> operator()(std::span<const double> z, double t) const;
  std::vector<Jet> operator()(std::span<const Jet> z, double t) const;

 private:
  std::size_t dim_;
  std::size_t params_;
  ScalarRhs scalar_;
  JetRhs jet_;
};

enum class StepMode { fixed, adaptive };

// absolute: max |e_i| over every coefficient of every component.
// mixed:    max |e_i| / max(1, |y_i|), for jets whose high-degree
//           coefficients are too large for an absolute bound.
enum class ErrorNorm { absolute, mixed };

struct IntegratorConfig {
  StepMode mode = StepMode::adaptive;
  double h = 0.0;              // fixed mode, when stepping from t0 by ns steps
  std::size_t ns = 0;          // fixed mode
  double tol = 1e-12;          // adaptive mode
  ErrorNorm norm = ErrorNorm::absolute;
  double safety = 0.9;
  double min_factor = 0.1;
  double max_factor = 5.0;
  double h_min_fraction = 1e-12;  // h_min = h_min_fraction * (tf - t0)
  double initial_step = 0.0;      // 0 means the whole interval
  std::size_t max_steps = 50'000'000;

  static IntegratorConfig fixed(std::size_t ns, double h = 0.0);
  static IntegratorConfig adaptive(double tol, ErrorNorm norm = ErrorNorm::absolute);
  // Throws std::invalid_argument on violated invariants.
  void validate() const;
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double h_min = std::numeric_limits<double>::infinity();
  double h_max = 0.0;

  void record(double h) {
    ++accepted;
    h_min = std::min(h_min, std::fabs(h));
    h_max = std::max(h_max, std::fabs(h));
  }
};

template <class T>
struct IntegrationResult {
  std::vector<T> state;
  double t = 0.0;
  StepStats stats;
};

namespace detail {

template <class T>
bool all_finite(const std::vector<T>& y) {
  return std::all_of(y.begin(), y.end(), [](const T& x) { return algebra::all_finite(x); });
}

template <class T>
double max_abs(const std::vector<T>& y) {
  double m = 0.0;
  for (const auto& x : y) {
    const double v = algebra::max_abs(x);
    if (std::isnan(v)) return v;
    m = std::max(m, v);
  }
  return m;
}

template <class T>
double error_norm(const std::vector<T>& e, const std::vector<T>& y, ErrorNorm norm) {
  if (norm == ErrorNorm::absolute) return max_abs(e);
  double m = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double v = algebra::mixed_max_abs(e[i], y[i]);
    if (std::isnan(v)) return v;
    m = std::max(m, v);
  }
  return m;
}

// y + sum_i c_i * k_i
template <class T>
std::vector<T> combine(const std::vector<T>& y, std::initializer_list<double> c,
                       std::initializer_list<const std::vector<T>*> k) {
  std::vector<T> out = y;
  auto ci = c.begin();
  for (const auto* kv : k) {
    const double s = *ci++;
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) algebra::add_scaled(out[i], s, (*kv)[i]);
  }
  return out;
}

template <class T, class F>
std::vector<T> scaled_rhs(const F& f, const std::vector<T>& y, double t, double h) {
  std::vector<T> k = f(std::span<const T>(y), t);
  if (k.size() != y.size()) throw std::invalid_argument("right-hand side returned wrong dimension");
  for (auto& x : k) x = h * x;
  return k;
}

}  // namespace detail

// ns classical RK4 steps of size h from t0; step i starts at t0 + i*h.
// h may be negative. The same code marches double and Jet states.
template <class T, class F>
IntegrationResult<T> rk4(const F& f, std::vector<T> y, double t0, double h, std::size_t ns) {
  IntegrationResult<T> res;
  for (std::size_t i = 0; i < ns; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const auto a = detail::scaled_rhs(f, y, t, h);
    const auto b = detail::scaled_rhs(f, detail::combine(y, {0.5}, {&a}), t + h / 2, h);
    const auto c = detail::scaled_rhs(f, detail::combine(y, {0.5}, {&b}), t + h / 2, h);
    const auto d = detail::scaled_rhs(f, detail::combine(y, {1.0}, {&c}), t + h, h);
    y = detail::combine(y, {1.0 / 6, 2.0 / 6, 2.0 / 6, 1.0 / 6}, {&a, &b, &c, &d});
    if (!detail::all_finite(y)) {
      throw DivergenceError("rk4: non-finite state after step " + std::to_string(i + 1), i + 1);
    }
    res.stats.record(h);
  }
  res.state = std::move(y);
  res.t = t0 + static_cast<double>(ns) * h;
  return res;
}

template <class T, class F>
IntegrationResult<T> rk4(const F& f, std::vector<T> y, double t0, const IntegratorConfig& cfg) {
  cfg.validate();
  if (cfg.mode != StepMode::fixed || !(cfg.h > 0.0)) {
    throw std::invalid_argument("rk4: needs a fixed-mode config with h > 0");
  }
  return rk4(f, std::move(y), t0, cfg.h, cfg.ns);
}

namespace detail {

// Fehlberg 4(5) coefficients.
struct Fehlberg {
  static constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c5 = 1.0, c6 = 1.0 / 2;
  static constexpr double a21 = 1.0 / 4;
  static constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
  static constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
  static constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513,
                          a54 = -845.0 / 4104;
  static constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565,
                          a64 = 1859.0 / 4104, a65 = -11.0 / 40;
  // Fifth-order weights.
  static constexpr double b1 = 16.0 / 135, b3 = 6656.0 / 12825, b4 = 28561.0 / 56430,
                          b5 = -9.0 / 50, b6 = 2.0 / 55;
  // Fifth minus fourth order.
  static constexpr double e1 = 1.0 / 360, e3 = -128.0 / 4275, e4 = -2197.0 / 75240,
                          e5 = 1.0 / 50, e6 = 2.0 / 55;
};

}  // namespace detail

// Adaptive Runge-Kutta-Fehlberg 4(5) from t0 to tf > t0. The local error is
// the largest coefficient of the 4th/5th order difference over all
// components; the 5th-order solution is propagated.
template <class T, class F>
IntegrationResult<T> rkf45(const F& f, std::vector<T> y, double t0, double tf,
                           const IntegratorConfig& cfg) {
  using K = detail::Fehlberg;
  cfg.validate();
  if (!(tf > t0)) throw std::invalid_argument("rkf45: needs tf > t0");
  if (y.empty()) throw std::invalid_argument("rkf45: empty state");
  const double span = tf - t0;
  const double h_min = cfg.h_min_fraction * span;
  double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, span) : span;
  double t = t0;
  IntegrationResult<T> res;
  bool last_was_nonfinite = false;

  while (t < tf) {
    if (res.stats.accepted + res.stats.rejected >= cfg.max_steps) {
      throw StiffnessError("rkf45: step budget exhausted", t, h);
    }
    bool last = false;
    if (t + h >= tf || tf - (t + h) < h_min) {
      h = tf - t;
      last = true;
    }
    const auto k1 = detail::scaled_rhs(f, y, t, h);
    const auto k2 = detail::scaled_rhs(f, detail::combine(y, {K::a21}, {&k1}), t + K::c2 * h, h);
    const auto k3 = detail::scaled_rhs(f, detail::combine(y, {K::a31, K::a32}, {&k1, &k2}),
                                       t + K::c3 * h, h);
    const auto k4 = detail::scaled_rhs(
        f, detail::combine(y, {K::a41, K::a42, K::a43}, {&k1, &k2, &k3}), t + K::c4 * h, h);
    const auto k5 =
        detail::scaled_rhs(f, detail::combine(y, {K::a51, K::a52, K::a53, K::a54}, {&k1, &k2, &k3, &k4}),
                           t + K::c5 * h, h);
    const auto k6 = detail::scaled_rhs(
        f, detail::combine(y, {K::a61, K::a62, K::a63, K::a64, K::a65}, {&k1, &k2, &k3, &k4, &k5}),
        t + K::c6 * h, h);

    std::vector<T> zero_based(y.size(), algebra::constant_like(y.front(), 0.0));
    const auto diff = detail::combine(zero_based, {K::e1, K::e3, K::e4, K::e5, K::e6},
                                      {&k1, &k3, &k4, &k5, &k6});
    double err = detail::error_norm(diff, y, cfg.norm);
    const bool finite = std::isfinite(err);
    if (!finite) err = std::numeric_limits<double>::infinity();

    if (err <= cfg.tol) {
      auto next = detail::combine(y, {K::b1, K::b3, K::b4, K::b5, K::b6}, {&k1, &k3, &k4, &k5, &k6});
      if (!detail::all_finite(next)) {
        throw DivergenceError("rkf45: non-finite state after step " +
                                  std::to_string(res.stats.accepted + 1),
                              res.stats.accepted + 1);
      }
      y = std::move(next);
      res.stats.record(h);
      t = last ? tf : t + h;
    } else {
      ++res.stats.rejected;
    }
    last_was_nonfinite = !finite;

    double factor = err == 0.0 ? cfg.max_factor : cfg.safety * std::pow(cfg.tol / err, 0.2);
    factor = std::clamp(factor, cfg.min_factor, cfg.max_factor);
    h *= factor;
    if (t < tf && h < h_min) {
      if (last_was_nonfinite) {
        throw DivergenceError("rkf45: non-finite values near t=" + std::to_string(t),
                              res.stats.accepted + 1);
      }
      throw StiffnessError("rkf45: step size underflow near t=" + std::to_string(t), t, h);
    }
  }
  res.state = std::move(y);
  res.t = tf;
  return res;
}

// Integrates from t0 to t1 in either direction. Fixed mode splits the
// interval into cfg.ns equal steps; adaptive mode runs rkf45, on the
// time-reversed system when t1 < t0.
template <class T, class F>
IntegrationResult<T> integrate(const F& f, std::vector<T> y, double t0, double t1,
                               const IntegratorConfig& cfg) {
  cfg.validate();
  if (t0 == t1) {
    IntegrationResult<T> res;
    res.state = std::move(y);
    res.t = t1;
    return res;
  }
  if (cfg.mode == StepMode::fixed) {
    const double h = (t1 - t0) / static_cast<double>(cfg.ns);
    auto res = rk4(f, std::move(y), t0, h, cfg.ns);
    res.t = t1;
    return res;
  }
  if (t1 > t0) return rkf45(f, std::move(y), t0, t1, cfg);
  auto reversed = [&f](std::span<const T> z, double s) {
    std::vector<T> d = f(z, -s);
    for (auto& x : d) x = -1.0 * x;
    return d;
  };
  auto res = rkf45(reversed, std::move(y), -t0, -t1, cfg);
  res.t = t1;
  return res;
}

}  // namespace jetmap

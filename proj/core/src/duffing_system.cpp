#include <cmath>
#include <stdexcept>

#include "jetmap/duffing.hpp"

namespace jetmap::duffing {

void DuffingParams::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("duffing: beta must be >= 0");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("duffing: eps must be >= 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("duffing: omega must be > 0");
}

PhasePoint to_scaled(const PhasePoint& pt, double omega) {
  if (pt.frame == Frame::scaled) return pt;
  return {pt.x / omega, pt.y / (omega * omega), Frame::scaled};
}

PhasePoint to_original(const PhasePoint& pt, double omega) {
  if (pt.frame == Frame::original) return pt;
  return {pt.x * omega, pt.y * omega * omega, Frame::original};
}

OdeSystem duffing_rhs(const DuffingParams& params) {
  params.validate();
  const double beta = params.beta;
  const double eps = params.eps;
  const double omega = params.omega;
  return OdeSystem(2, [beta, eps, omega](auto z, double tau) {
    using T = state_value_t<decltype(z)>;
    const auto& q = z[0];
    const auto& p = z[1];
    return std::vector<T>{p, -2.0 * beta * p - q - q * q * q - eps * std::sin(omega * tau)};
  });
}

ParametricSystem duffing_parametric(double beta, double eps) {
  return ParametricSystem(2, 1, [beta, eps](auto z, auto lambda, double t) {
    using T = state_value_t<decltype(z)>;
    const auto& z1 = z[0];
    const auto& z2 = z[1];
    const auto& s = lambda[0];
    return std::vector<T>{z2, -2.0 * beta * (s * z2) - algebra::ipow(s, 2) * z1 -
                                  algebra::ipow(z1, 3) - eps * std::sin(t) * algebra::ipow(s, 3)};
  });
}

OdeSystem duffing_scaled_rhs(double beta, double eps) {
  const double sigma = 1.0;  // only the initial state depends on it
  return lift_parameters(duffing_parametric(beta, eps), std::span<const double>(&sigma, 1)).system;
}

ExpansionPoint ExpansionPoint::from_original(double q, double p, double omega) {
  const auto s = to_scaled({q, p, Frame::original}, omega);
  return {s.x, s.y, 1.0 / omega};
}

TaylorMap stroboscopic_taylor_map(double beta, double eps, const ExpansionPoint& at, std::size_t p,
                                  const IntegratorConfig& cfg, SolveMethod method) {
  if (p < 1) throw std::invalid_argument("stroboscopic_taylor_map: order must be >= 1");
  DuffingParams{beta, eps, 1.0 / at.sigma}.validate();
  const OdeSystem system = duffing_scaled_rhs(beta, eps);
  const auto table = MonomialTable::build(3, p);
  const auto z0 = at.as_array();
  if (method == SolveMethod::backward) return backward_solve(system, z0, 0.0, kTwoPi, table, cfg);
  return forward_solve(system, z0, 0.0, kTwoPi, table, cfg);
}

std::vector<Vec2> iterate_map(const TaylorMap& map, Vec2 zeta0, double dsigma, std::size_t n,
                              const IterateOptions& opts) {
  if (map.dim() != 3 || map.m_dynamical != 2) {
    throw std::invalid_argument("iterate_map: needs a map in (z1, z2, sigma)");
  }
  if (std::hypot(zeta0[0], zeta0[1]) > opts.trust_radius || std::fabs(dsigma) > opts.trust_radius) {
    throw std::invalid_argument("iterate_map: starting deviation outside the trust radius");
  }
  std::vector<Vec2> out{zeta0};
  out.reserve(n + 1);
  std::array<double, 3> zeta{zeta0[0], zeta0[1], dsigma};
  for (std::size_t i = 0; i < n; ++i) {
    const double a = eval(map.rows[0], zeta) - map.expansion_point[0];
    const double b = eval(map.rows[1], zeta) - map.expansion_point[1];
    if (!(std::hypot(a, b) <= opts.escape_radius)) {
      throw DivergenceError("iterate_map: left the escape radius at iteration " + std::to_string(i + 1),
                            i + 1);
    }
    zeta[0] = a;
    zeta[1] = b;
    out.push_back({a, b});
  }
  return out;
}

}  // namespace jetmap::duffing

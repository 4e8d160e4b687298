#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jetmap/duffing.hpp"

namespace jetmap::duffing {
namespace {

Mat2 multiply(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return c;
}

}  // namespace

ExactStroboscopicMap::ExactStroboscopicMap(const DuffingParams& params, IntegratorConfig cfg,
                                           double fd_step)
    : params_(params), system_(duffing_rhs(params)), cfg_(cfg), fd_step_(fd_step) {
  cfg_.validate();
  if (!(fd_step_ > 0.0)) throw std::invalid_argument("ExactStroboscopicMap: fd_step must be > 0");
}

Vec2 ExactStroboscopicMap::apply(Vec2 qp) const {
  const double period = kTwoPi / params_.omega;
  const auto res = integrate(system_, std::vector<double>{qp[0], qp[1]}, 0.0, period, cfg_);
  return {res.state[0], res.state[1]};
}

Mat2 ExactStroboscopicMap::jacobian(Vec2 qp) const {
  Mat2 j{};
  for (int b = 0; b < 2; ++b) {
    Vec2 hi = qp, lo = qp;
    hi[b] += fd_step_;
    lo[b] -= fd_step_;
    const Vec2 fh = apply(hi);
    const Vec2 fl = apply(lo);
    for (int a = 0; a < 2; ++a) j[a][b] = (fh[a] - fl[a]) / (2.0 * fd_step_);
  }
  return j;
}

Mat2 ExactStroboscopicMap::jacobian_variational(Vec2 qp) const {
  const auto table = MonomialTable::build(2, 1);
  const auto map = forward_solve(system_, qp, 0.0, kTwoPi / params_.omega, table, cfg_);
  return {{{map.coefficient(1, 2), map.coefficient(1, 3)},
           {map.coefficient(2, 2), map.coefficient(2, 3)}}};
}

PolynomialStroboscopicMap::PolynomialStroboscopicMap(std::shared_ptr<const TaylorMap> map, double omega,
                                                     IterateOptions opts)
    : map_(std::move(map)), omega_(omega), opts_(opts) {
  if (!map_ || map_->dim() != 3 || map_->m_dynamical != 2) {
    throw std::invalid_argument("PolynomialStroboscopicMap: needs a map in (z1, z2, sigma)");
  }
  if (!(omega_ > 0.0)) throw std::invalid_argument("PolynomialStroboscopicMap: omega must be > 0");
  dsigma_ = 1.0 / omega_ - map_->expansion_point[2];
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) d_[a][b] = derivative(map_->rows[a], b + 1);
  }
}

std::array<double, 3> PolynomialStroboscopicMap::deviation(Vec2 qp) const {
  const auto z = to_scaled({qp[0], qp[1], Frame::original}, omega_);
  std::array<double, 3> zeta{z.x - map_->expansion_point[0], z.y - map_->expansion_point[1], dsigma_};
  if (!(std::hypot(zeta[0], zeta[1]) <= opts_.escape_radius)) {
    throw DivergenceError("polynomial map: deviation outside the escape radius", 0);
  }
  return zeta;
}

Vec2 PolynomialStroboscopicMap::apply(Vec2 qp) const {
  const auto zeta = deviation(qp);
  const auto o = to_original({eval(map_->rows[0], zeta), eval(map_->rows[1], zeta), Frame::scaled}, omega_);
  return {o.x, o.y};
}

Mat2 PolynomialStroboscopicMap::jacobian(Vec2 qp) const {
  const auto zeta = deviation(qp);
  const std::array<double, 2> s{omega_, omega_ * omega_};
  Mat2 j{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) j[a][b] = s[a] * eval(d_[a][b], zeta) / s[b];
  }
  return j;
}

std::array<std::complex<double>, 2> eigenvalues(const Mat2& a) {
  const double half_tr = 0.5 * (a[0][0] + a[1][1]);
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const std::complex<double> root = std::sqrt(std::complex<double>(half_tr * half_tr - det, 0.0));
  return {half_tr + root, half_tr - root};
}

FixedPointResult fixed_point_newton(const PlanarMap& map, Vec2 guess, unsigned k, double tol,
                                    std::size_t max_iter) {
  if (k < 1) throw std::invalid_argument("fixed_point_newton: period must be >= 1");
  FixedPointResult res;
  Vec2 x = guess;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Vec2 y = x;
    Mat2 jk{{{1.0, 0.0}, {0.0, 1.0}}};
    for (unsigned i = 0; i < k; ++i) {
      jk = multiply(map.jacobian(y), jk);
      y = map.apply(y);
    }
    const Vec2 f{y[0] - x[0], y[1] - x[1]};
    const double a = jk[0][0] - 1.0, b = jk[0][1], c = jk[1][0], d = jk[1][1] - 1.0;
    const double det = a * d - b * c;
    const double scale = std::max({std::fabs(a * d), std::fabs(b * c), 1e-300});
    if (std::fabs(det) <= 1e-13 * scale || !std::isfinite(det)) {
      throw SingularJacobian("fixed_point_newton: M^k - I is singular (a multiplier is 1)");
    }
    const Vec2 dx{(-d * f[0] + b * f[1]) / det, (c * f[0] - a * f[1]) / det};
    x = {x[0] + dx[0], x[1] + dx[1]};
    res.iterations = it;
    res.residual = std::hypot(f[0], f[1]);
    if (std::hypot(dx[0], dx[1]) <= tol * (1.0 + std::hypot(x[0], x[1])) || res.residual <= tol) {
      Mat2 jf{{{1.0, 0.0}, {0.0, 1.0}}};
      Vec2 z = x;
      for (unsigned i = 0; i < k; ++i) {
        jf = multiply(map.jacobian(z), jf);
        z = map.apply(z);
      }
      res.point = x;
      res.residual = std::hypot(z[0] - x[0], z[1] - x[1]);
      res.multipliers = eigenvalues(jf);
      return res;
    }
  }
  throw NoConvergence("fixed_point_newton: no convergence after " + std::to_string(max_iter) +
                      " iterations");
}

ExactMapSource::ExactMapSource(double beta, double eps, IntegratorConfig cfg)
    : beta_(beta), eps_(eps), cfg_(cfg) {
  DuffingParams{beta, eps, 1.0}.validate();
  cfg_.validate();
}

std::unique_ptr<PlanarMap> ExactMapSource::at(double omega) const {
  return std::make_unique<ExactStroboscopicMap>(DuffingParams{beta_, eps_, omega}, cfg_);
}

TaylorMapSource::TaylorMapSource(std::shared_ptr<const TaylorMap> map, IterateOptions opts)
    : map_(std::move(map)), opts_(opts) {}

std::unique_ptr<PlanarMap> TaylorMapSource::at(double omega) const {
  return std::make_unique<PolynomialStroboscopicMap>(map_, omega, opts_);
}

}  // namespace jetmap::duffing

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jetmap/ode.hpp"
#include "jetmap/variational.hpp"

namespace jetmap::duffing {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

struct DuffingParams {
  double beta = 0.1;
  double eps = 0.0;
  double omega = 1.0;

  double sigma() const { return 1.0 / omega; }
  void validate() const;
};

// original: (q, p) with q'' + 2 beta q' + q + q^3 = -eps sin(omega tau)
// scaled:   (Q, Q') = (z1, z2) in the time t = omega tau, q = omega Q
enum class Frame { original, scaled };

struct PhasePoint {
  double x = 0.0;
  double y = 0.0;
  Frame frame = Frame::original;
};

PhasePoint to_scaled(const PhasePoint& pt, double omega);
PhasePoint to_original(const PhasePoint& pt, double omega);

// q' = p, p' = -2 beta p - q - q^3 - eps sin(omega tau).
OdeSystem duffing_rhs(const DuffingParams& params);

// z1' = z2, z2' = -2 beta sigma z2 - sigma^2 z1 - z1^3 - eps sigma^3 sin t, with
// sigma = 1/omega as the single parameter.
ParametricSystem duffing_parametric(double beta, double eps);
// The same with sigma lifted to a third variable (z3' = 0).
OdeSystem duffing_scaled_rhs(double beta, double eps);

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct ExpansionPoint {
  double z1 = 0.0;
  double z2 = 0.0;
  double sigma = 1.0;

  static ExpansionPoint from_original(double q, double p, double omega);
  std::array<double, 3> as_array() const { return {z1, z2, sigma}; }
};

enum class SolveMethod { forward, backward };

// Order-p period map over t in [0, 2 pi] in the variables (z1, z2, sigma).
TaylorMap stroboscopic_taylor_map(double beta, double eps, const ExpansionPoint& at, std::size_t p,
                                  const IntegratorConfig& cfg = IntegratorConfig::adaptive(1e-12, ErrorNorm::mixed),
                                  SolveMethod method = SolveMethod::forward);

struct IterateOptions {
  double escape_radius = 10.0;
  double trust_radius = 10.0;
};

// zeta_{n+1} = M(zd + zeta_n) - zd on the dynamical rows with dsigma held
// fixed. Returns n + 1 points starting with zeta0.
std::vector<Vec2> iterate_map(const TaylorMap& map, Vec2 zeta0, double dsigma, std::size_t n,
                              const IterateOptions& opts = {});

// One-period map in the original (q, p) frame at a fixed omega.
class PlanarMap {
 public:
  virtual ~PlanarMap() = default;
  virtual Vec2 apply(Vec2 qp) const = 0;
  virtual Mat2 jacobian(Vec2 qp) const = 0;
};

class ExactStroboscopicMap : public PlanarMap {
 public:
  ExactStroboscopicMap(const DuffingParams& params, IntegratorConfig cfg = IntegratorConfig::adaptive(1e-12),
                       double fd_step = 1e-6);
  Vec2 apply(Vec2 qp) const override;
  // Central differences.
  Mat2 jacobian(Vec2 qp) const override;
  // Integrates the first-order variational equations along the orbit.
  Mat2 jacobian_variational(Vec2 qp) const;
  const DuffingParams& params() const noexcept { return params_; }

 private:
  DuffingParams params_;
  OdeSystem system_;
  IntegratorConfig cfg_;
  double fd_step_;
};

// A Taylor map in (z1, z2, sigma) evaluated at sigma = 1/omega and seen from
// the original frame.
class PolynomialStroboscopicMap : public PlanarMap {
 public:
  PolynomialStroboscopicMap(std::shared_ptr<const TaylorMap> map, double omega,
                            IterateOptions opts = {});
  Vec2 apply(Vec2 qp) const override;
  Mat2 jacobian(Vec2 qp) const override;
  double dsigma() const noexcept { return dsigma_; }

 private:
  std::array<double, 3> deviation(Vec2 qp) const;

  std::shared_ptr<const TaylorMap> map_;
  double omega_;
  double dsigma_;
  IterateOptions opts_;
  std::array<std::array<Jet, 2>, 2> d_;  // d_[a][b] = d row_a / d zeta_b
};

struct FixedPointResult {
  Vec2 point{};
  std::array<std::complex<double>, 2> multipliers{};
  std::size_t iterations = 0;
  double residual = 0.0;
};

std::array<std::complex<double>, 2> eigenvalues(const Mat2& a);

// Newton on M^k(x) - x with the chain-rule Jacobian of M^k.
FixedPointResult fixed_point_newton(const PlanarMap& map, Vec2 guess, unsigned k = 1,
                                    double tol = 1e-11, std::size_t max_iter = 50);

class MapSource {
 public:
  virtual ~MapSource() = default;
  virtual std::unique_ptr<PlanarMap> at(double omega) const = 0;
  virtual std::string kind() const = 0;
};

class ExactMapSource : public MapSource {
 public:
  ExactMapSource(double beta, double eps, IntegratorConfig cfg = IntegratorConfig::adaptive(1e-12));
  std::unique_ptr<PlanarMap> at(double omega) const override;
  std::string kind() const override { return "exact"; }

 private:
  double beta_;
  double eps_;
  IntegratorConfig cfg_;
};

class TaylorMapSource : public MapSource {
 public:
  explicit TaylorMapSource(std::shared_ptr<const TaylorMap> map, IterateOptions opts = {});
  std::unique_ptr<PlanarMap> at(double omega) const override;
  std::string kind() const override { return "taylor"; }

 private:
  std::shared_ptr<const TaylorMap> map_;
  IterateOptions opts_;
};

enum class SeedPolicy { continuation, fixed };

struct ScanOptions {
  std::size_t transient = 2000;
  std::size_t record = 200;
  SeedPolicy seed = SeedPolicy::continuation;
  Vec2 start{0.0, 0.0};  // (q, p)
  unsigned threads = 1;  // used by the fixed-seed policy only
};

struct ScanRow {
  double omega = 0.0;
  std::vector<Vec2> samples;  // empty when the orbit diverged
  std::string error;
};

struct ScanResult {
  std::string source;
  std::size_t transient = 0;
  std::size_t record = 0;
  SeedPolicy seed = SeedPolicy::continuation;
  std::vector<ScanRow> rows;
};

ScanResult feigenbaum_scan(const MapSource& source, std::span<const double> omega_grid,
                           const ScanOptions& opts);

std::vector<Vec2> attractor_sample(const MapSource& source, double omega, Vec2 start,
                                   std::size_t transient, std::size_t count);

// Smallest k <= max_period such that every sample lies within tol of the
// sample k steps earlier in its residue class; nullopt if none.
std::optional<unsigned> detect_period(std::span<const Vec2> samples, unsigned max_period = 64,
                                      double tol = 1e-6);

// Diagonal of the bounding box of the samples.
double spread(std::span<const Vec2> samples);

std::vector<double> omega_grid(double lo, double hi, double step);

}  // namespace jetmap::duffing

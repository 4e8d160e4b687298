#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "jetmap/duffing.hpp"
#include "jetmap/io.hpp"

using namespace jetmap;
using namespace jetmap::duffing;

namespace {

constexpr double kQ633 = 1.26082;
constexpr double kP633 = 2.05452;

std::shared_ptr<const TaylorMap> identity_map() {
  auto table = MonomialTable::build(3, 3);
  TaylorMap m;
  m.m_dynamical = 2;
  m.n_params = 1;
  m.t_f = kTwoPi;
  m.expansion_point = {0.2, -0.1, 0.5};
  m.design_endpoint = m.expansion_point;
  for (std::size_t a = 0; a < 3; ++a) {
    Jet row = Jet::variable(table, a + 1);
    row[1] = m.expansion_point[a];
    m.rows.push_back(row);
  }
  return std::make_shared<const TaylorMap>(std::move(m));
}

const TaylorMap& m8() {
  static const TaylorMap map =
      stroboscopic_taylor_map(0.1, 25.0, ExpansionPoint::from_original(kQ633, kP633, 1.285), 8);
  return map;
}

}  // namespace

TEST(DuffingFrames, RoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(-5.0, 5.0), w(0.5, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const PhasePoint s{x(rng), x(rng), Frame::scaled};
    const double omega = w(rng);
    const auto back = to_scaled(to_original(s, omega), omega);
    EXPECT_NEAR(back.x, s.x, 1e-14 * std::max(1.0, std::fabs(s.x)));
    EXPECT_NEAR(back.y, s.y, 1e-14 * std::max(1.0, std::fabs(s.y)));
    EXPECT_EQ(back.frame, Frame::scaled);
  }
  const auto o = to_original({0.3, 0.4, Frame::scaled}, 2.0);
  EXPECT_DOUBLE_EQ(o.x, 0.6);
  EXPECT_DOUBLE_EQ(o.y, 1.6);
}

TEST(DuffingParams, Validation) {
  EXPECT_THROW((DuffingParams{-0.1, 1.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((DuffingParams{0.1, -1.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((DuffingParams{0.1, 1.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((DuffingParams{0.0, 0.0, 2.0}.validate()));
}

TEST(DuffingRhs, Examples) {
  const auto f0 = duffing_rhs({0.1, 0.0, 1.0});
  const std::vector<double> origin{0.0, 0.0};
  EXPECT_EQ(f0(origin, 0.7), (std::vector<double>{0.0, 0.0}));
  const auto f1 = duffing_rhs({0.0, 0.0, 1.0});
  const std::vector<double> x{1.0, 0.0};
  EXPECT_EQ(f1(x, 0.0), (std::vector<double>{0.0, -2.0}));

  // Scaled form: z2' = -2 b s z2 - s^2 z1 - z1^3 - e s^3 sin t.
  const auto g = duffing_scaled_rhs(0.1, 1.5);
  const std::vector<double> z{0.3, 0.4, 0.5};
  const auto d = g(z, 1.0);
  EXPECT_DOUBLE_EQ(d[0], 0.4);
  EXPECT_NEAR(d[1], -2 * 0.1 * 0.5 * 0.4 - 0.25 * 0.3 - 0.027 - 1.5 * 0.125 * std::sin(1.0), 1e-15);
  EXPECT_EQ(d[2], 0.0);
}

TEST(ExactMap, MatchesScaledRunThroughFrameConversion) {
  const double omega = 2.0;
  ExactStroboscopicMap map({0.1, 1.5, omega});
  const auto img = map.apply({0.6, 1.6});
  // Printed values carry six figures.
  EXPECT_NEAR(img[0] / omega, -0.0493158, 2e-6);
  EXPECT_NEAR(img[1] / (omega * omega), 0.439713, 2e-6);
}

TEST(ExactMap, JacobianDeterminantIsDamping) {
  for (const auto& [beta, omega] : {std::pair{0.1, 2.0}, {0.1, 1.25}, {0.05, 1.0}}) {
    ExactStroboscopicMap map({beta, 1.5, omega});
    const auto j = map.jacobian_variational({0.4, -0.3});
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    EXPECT_NEAR(det, std::exp(-4.0 * M_PI * beta / omega), 1e-8);
    // Central differences agree to the noise of adaptive step sequences.
    const auto fd = map.jacobian({0.4, -0.3});
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) EXPECT_NEAR(fd[a][b], j[a][b], 1e-5);
    }
  }
}

TEST(TaylorMap, ParameterRowIsIdentity) {
  const auto m = stroboscopic_taylor_map(0.1, 1.5, {0.3, 0.4, 0.5}, 3, IntegratorConfig::fixed(100));
  const Jet& row3 = m.rows[2];
  for (Rank r = 1; r <= row3.table()->size(); ++r) {
    const double expect = r == 1 ? 0.5 : (r == 4 ? 1.0 : 0.0);
    EXPECT_EQ(row3[r], expect) << "rank " << r;
  }
  EXPECT_NEAR(m.coefficient(1, 1), -0.0493158, 1e-6);
  EXPECT_NEAR(m.coefficient(2, 1), 0.439713, 1e-6);
  EXPECT_NEAR(m.coefficient(1, 2), 0.973942, 1e-6);
  EXPECT_NEAR(m.coefficient(1, 3), -0.110494, 1e-6);
  EXPECT_NEAR(m.coefficient(1, 4), 5.51271, 1e-5);
}

TEST(TaylorMap, UnforcedOriginIsAnOrbit) {
  const auto m = stroboscopic_taylor_map(0.1, 0.0, {0.0, 0.0, 0.8}, 4);
  EXPECT_EQ(m.coefficient(1, 1), 0.0);
  EXPECT_EQ(m.coefficient(2, 1), 0.0);
}

TEST(TaylorMap, ZeroDeviationGivesDesignEndpoint) {
  const auto m = stroboscopic_taylor_map(0.1, 1.5, {0.3, 0.4, 0.5}, 3);
  const std::vector<double> zero(3, 0.0);
  EXPECT_EQ(m.apply(zero), m.design_endpoint);
}

TEST(TaylorMap, RejectsOrderZero) {
  EXPECT_THROW(stroboscopic_taylor_map(0.1, 1.5, {0.3, 0.4, 0.5}, 0), std::invalid_argument);
}

TEST(IterateMap, TrivialCases) {
  const auto id = identity_map();
  EXPECT_EQ(iterate_map(*id, {0.01, 0.02}, 0.0, 0), (std::vector<Vec2>{{0.01, 0.02}}));
  const auto traj = iterate_map(*id, {0.01, -0.02}, 0.003, 25);
  ASSERT_EQ(traj.size(), 26u);
  for (const auto& z : traj) {
    EXPECT_NEAR(z[0], 0.01, 1e-15);
    EXPECT_NEAR(z[1], -0.02, 1e-15);
  }
  EXPECT_THROW(iterate_map(*id, {20.0, 0.0}, 0.0, 1), std::invalid_argument);
}

TEST(IterateMap, EscapeRadiusRaisesDivergence) {
  // Doubling map: zeta -> 2 zeta leaves radius 10 after a few steps.
  auto m = *identity_map();
  m.rows[0][2] = 2.0;
  m.rows[1][3] = 2.0;
  EXPECT_THROW(iterate_map(m, {0.5, 0.5}, 0.0, 10), DivergenceError);
}

TEST(IterateMap, FixedPointStaysPut) {
  const auto map = std::make_shared<const TaylorMap>(m8());
  const double omega = 1.285;
  PolynomialStroboscopicMap planar(map, omega);
  const auto fp = fixed_point_newton(planar, {kQ633, kP633});
  const auto z = to_scaled({fp.point[0], fp.point[1], Frame::original}, omega);
  const Vec2 zeta{z.x - map->expansion_point[0], z.y - map->expansion_point[1]};
  const auto traj = iterate_map(*map, zeta, planar.dsigma(), 5);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    EXPECT_LT(std::hypot(traj[i][0] - traj[i - 1][0], traj[i][1] - traj[i - 1][1]), 1e-9);
  }
}

TEST(PolynomialMap, JacobianMatchesCentralDifferences) {
  const auto map = std::make_shared<const TaylorMap>(m8());
  PolynomialStroboscopicMap planar(map, 1.28);
  const Vec2 x{1.2, 2.1};
  const auto j = planar.jacobian(x);
  const double h = 1e-6;
  for (int b = 0; b < 2; ++b) {
    Vec2 hi = x, lo = x;
    hi[b] += h;
    lo[b] -= h;
    const auto fh = planar.apply(hi), fl = planar.apply(lo);
    for (int a = 0; a < 2; ++a) {
      EXPECT_NEAR(j[a][b], (fh[a] - fl[a]) / (2 * h), 1e-6 * std::max(1.0, std::fabs(j[a][b])));
    }
  }
}

TEST(Newton, UnforcedOriginIsStable) {
  ExactStroboscopicMap map({0.1, 0.0, 1.3});
  const auto fp = fixed_point_newton(map, {0.05, -0.02});
  EXPECT_NEAR(fp.point[0], 0.0, 1e-10);
  EXPECT_NEAR(fp.point[1], 0.0, 1e-10);
  for (const auto& mu : fp.multipliers) EXPECT_LT(std::abs(mu), 1.0);
}

TEST(Newton, PeriodOneIsPeriodTwo) {
  ExactStroboscopicMap map({0.1, 1.5, 2.0});
  const auto f1 = fixed_point_newton(map, {0.075, 1.05}, 1);
  const auto f2 = fixed_point_newton(map, f1.point, 2);
  EXPECT_NEAR(f2.point[0], f1.point[0], 1e-8);
  EXPECT_NEAR(f2.point[1], f1.point[1], 1e-8);
  EXPECT_LE(f2.iterations, 2u);
  // The 2-fold multipliers are the squares of the 1-fold ones.
  std::array<double, 2> m1{std::norm(f1.multipliers[0]), std::norm(f1.multipliers[1])};
  std::array<double, 2> m2{std::abs(f2.multipliers[0]), std::abs(f2.multipliers[1])};
  std::sort(m1.begin(), m1.end());
  std::sort(m2.begin(), m2.end());
  EXPECT_NEAR(m1[0], m2[0], 1e-5);
  EXPECT_NEAR(m1[1], m2[1], 1e-5);
}

TEST(Newton, UnstablePointOfStrongForcing) {
  ExactStroboscopicMap map({0.1, 25.0, 1.285});
  const auto fp = fixed_point_newton(map, {kQ633, kP633});
  EXPECT_LT(std::hypot(fp.point[0] - kQ633, fp.point[1] - kP633), 1e-3);
  EXPECT_GT(std::max(std::abs(fp.multipliers[0]), std::abs(fp.multipliers[1])), 1.0);
}

TEST(Newton, Errors) {
  ExactStroboscopicMap map({0.1, 0.0, 1.3});
  EXPECT_THROW(fixed_point_newton(map, {0.1, 0.1}, 0), std::invalid_argument);
  // The identity has every point fixed with multiplier 1.
  PolynomialStroboscopicMap id(identity_map(), 2.0);
  EXPECT_THROW(fixed_point_newton(id, {0.8, -0.4}), SingularJacobian);
  EXPECT_THROW(fixed_point_newton(map, {0.5, 0.5}, 1, 0.0, 1), NoConvergence);
}

TEST(Eigenvalues, RealAndComplex) {
  const auto r = eigenvalues({{{2.0, 0.0}, {0.0, 3.0}}});
  EXPECT_DOUBLE_EQ(std::max(r[0].real(), r[1].real()), 3.0);
  const auto c = eigenvalues({{{0.0, -1.0}, {1.0, 0.0}}});
  EXPECT_DOUBLE_EQ(std::abs(c[0]), 1.0);
  EXPECT_DOUBLE_EQ(std::fabs(c[0].imag()), 1.0);
}

TEST(DetectPeriod, SyntheticOrbits) {
  std::vector<Vec2> p1(50, Vec2{1.0, 2.0});
  EXPECT_EQ(detect_period(p1), 1u);
  std::vector<Vec2> p4;
  for (int i = 0; i < 64; ++i) p4.push_back({static_cast<double>(i % 4), 0.5 * (i % 4)});
  EXPECT_EQ(detect_period(p4), 4u);
  std::vector<Vec2> chaos;
  double x = 0.3;
  for (int i = 0; i < 300; ++i) {
    x = 4.0 * x * (1.0 - x);
    chaos.push_back({x, 0.0});
  }
  EXPECT_FALSE(detect_period(chaos).has_value());
  // A period longer than half the sample cannot be confirmed.
  EXPECT_FALSE(detect_period(std::span(p4).first(6)).has_value());
}

TEST(Scan, Validation) {
  ExactMapSource src(0.1, 0.15);
  const std::vector<double> empty;
  EXPECT_THROW(feigenbaum_scan(src, empty, {}), std::invalid_argument);
  const std::vector<double> bumpy{1.0, 1.2, 1.1};
  EXPECT_THROW(feigenbaum_scan(src, bumpy, {}), std::invalid_argument);
  ScanOptions zero;
  zero.record = 0;
  const std::vector<double> one{1.0};
  EXPECT_THROW(feigenbaum_scan(src, one, zero), std::invalid_argument);
  EXPECT_THROW(omega_grid(1.0, 0.5, 0.1), std::invalid_argument);
  EXPECT_EQ(omega_grid(1.24, 1.30, 1e-4).size(), 601u);
}

TEST(Scan, WeakForcingHasOneCluster) {
  ExactMapSource src(0.1, 0.15);
  ScanOptions opts;
  opts.record = 20;
  const auto grid = omega_grid(0.2, 3.0, 0.4);
  const auto res = feigenbaum_scan(src, grid, opts);
  ASSERT_EQ(res.rows.size(), grid.size());
  for (const auto& row : res.rows) {
    ASSERT_EQ(row.samples.size(), 20u) << row.omega;
    EXPECT_LT(spread(row.samples), 1e-6) << row.omega;
  }
}

TEST(Scan, HysteresisBetweenTheJumps) {
  ExactMapSource src(0.1, 1.5);
  ScanOptions opts;
  opts.transient = 300;
  opts.record = 8;
  auto up = omega_grid(1.5, 3.0, 0.1);
  auto down = up;
  std::reverse(down.begin(), down.end());
  const auto ru = feigenbaum_scan(src, up, opts);
  const auto rd = feigenbaum_scan(src, down, opts);
  for (std::size_t i = 0; i < up.size(); ++i) {
    const auto& a = ru.rows[i].samples.front();
    const auto& b = rd.rows[up.size() - 1 - i].samples.front();
    const double gap = std::hypot(a[0] - b[0], a[1] - b[1]);
    if (up[i] > 1.85 && up[i] < 2.6) {
      EXPECT_GT(gap, 0.5) << up[i];
    } else if (up[i] < 1.75 || up[i] > 2.75) {
      EXPECT_LT(gap, 1e-6) << up[i];
    }
  }
}

TEST(Scan, FixedSeedIsThreadIndependent) {
  ExactMapSource src(0.1, 1.5);
  ScanOptions opts;
  opts.seed = SeedPolicy::fixed;
  opts.start = {0.6, 1.6};
  opts.transient = 50;
  opts.record = 5;
  const auto grid = omega_grid(1.7, 2.3, 0.1);
  const auto serial = feigenbaum_scan(src, grid, opts);
  opts.threads = 3;
  const auto parallel = feigenbaum_scan(src, grid, opts);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(serial.rows[i].samples, parallel.rows[i].samples);
  }
}

TEST(Scan, DivergenceLeavesAnEmptyRow) {
  TaylorMapSource src(std::make_shared<const TaylorMap>(m8()));
  ScanOptions opts;
  opts.start = {40.0, 0.0};  // far outside the escape radius
  opts.transient = 5;
  opts.record = 5;
  const std::vector<double> grid{1.28, 1.285};
  const auto res = feigenbaum_scan(src, grid, opts);
  for (const auto& row : res.rows) {
    EXPECT_TRUE(row.samples.empty());
    EXPECT_FALSE(row.error.empty());
  }
}

TEST(Attractor, WeakForcingCollapses) {
  ExactMapSource src(0.1, 0.15);
  const auto s = attractor_sample(src, 1.0, {0.0, 0.0}, 2000, 50);
  EXPECT_LT(spread(s), 1e-6);
}

TEST(Attractor, PolynomialMapIsBoundedAndAperiodic) {
  TaylorMapSource src(std::make_shared<const TaylorMap>(m8()));
  const auto s = attractor_sample(src, 1.2902, {kQ633, kP633}, 5000, 10000);
  ASSERT_EQ(s.size(), 10000u);
  for (const auto& x : s) ASSERT_TRUE(std::isfinite(x[0]) && std::isfinite(x[1]));
  EXPECT_LT(spread(s), 5.0);
  EXPECT_FALSE(detect_period(s).has_value());
}

TEST(Io, TaylorMapRoundTrip) {
  const auto m = stroboscopic_taylor_map(0.1, 1.5, {0.3, 0.4, 0.5}, 3);
  const auto back = io::taylor_map_from_json(io::taylor_map_to_json(m));
  EXPECT_EQ(max_abs_difference(m, back), 0.0);
  EXPECT_EQ(back.expansion_point, m.expansion_point);
  EXPECT_EQ(back.design_endpoint, m.design_endpoint);
  EXPECT_EQ(back.n_params, 1u);
}

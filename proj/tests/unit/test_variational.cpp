#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "jetmap/duffing.hpp"
#include "jetmap/polynomial_system.hpp"
#include "jetmap/variational.hpp"

using namespace jetmap;

namespace {

OdeSystem riccati() {
  return OdeSystem(1, [](auto z, double t) {
    using T = state_value_t<decltype(z)>;
    return std::vector<T>{-2.0 * t * (z[0] * z[0])};
  });
}

OdeSystem two_variable() {
  return OdeSystem(2, [](auto z, double) {
    using T = state_value_t<decltype(z)>;
    return std::vector<T>{-1.0 * (z[0] * z[0]), 2.0 * (z[0] * z[1])};
  });
}

OdeSystem zero_system(std::size_t dim) {
  return OdeSystem(dim, [](auto z, double) {
    using T = state_value_t<decltype(z)>;
    return std::vector<T>(z.size(), algebra::constant_like(z[0], 0.0));
  });
}

using Mat = std::vector<std::vector<double>>;

Mat matmul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// exp(A) by summing the power series.
Mat expm_series(const Mat& a) {
  const std::size_t n = a.size();
  Mat sum(n, std::vector<double>(n, 0.0)), term(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) sum[i][i] = term[i][i] = 1.0;
  for (int k = 1; k < 60; ++k) {
    term = matmul(term, a);
    for (auto& row : term)
      for (auto& x : row) x /= k;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum[i][j] += term[i][j];
  }
  return sum;
}

PolynomialSystem random_system(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> coeff(-0.6, 0.6);
  PolynomialSystem ps(m);
  for (std::size_t a = 0; a < m; ++a) {
    const int terms = 2 + static_cast<int>(rng() % 4);
    for (int k = 0; k < terms; ++k) {
      std::vector<unsigned> e(m, 0);
      const unsigned d = static_cast<unsigned>(rng() % 4);
      for (unsigned i = 0; i < d; ++i) ++e[rng() % m];
      const auto factor = static_cast<TimeFactor>(rng() % 4);
      ps.add_term(a, {coeff(rng), factor, e});
    }
  }
  return ps;
}

}  // namespace

TEST(ExpandRhs, DuffingForcingTerms) {
  const double beta = 0.1, eps = 1.5;
  const OdeSystem sys = duffing::duffing_scaled_rhs(beta, eps);
  auto table = MonomialTable::build(3, 3);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<double> zd{u(rng), u(rng), 0.5 + 0.5 * u(rng)};
    const double t = 3.0 * u(rng);
    const auto e = expand_rhs(sys, zd, t, table);
    const double z1 = zd[0], z2 = zd[1], z3 = zd[2], s = std::sin(t);
    EXPECT_NEAR(e.design_value[0], z2, 1e-15);
    EXPECT_NEAR(e.design_value[1],
                -2 * beta * z3 * z2 - z3 * z3 * z1 - z1 * z1 * z1 - eps * z3 * z3 * z3 * s, 1e-14);
    EXPECT_EQ(e.design_value[2], 0.0);
    // Degree >= 1 labels l map to jet rank l + 1.
    std::map<std::pair<std::size_t, Rank>, double> want{
        {{1, 2}, 1.0},
        {{2, 1}, -3 * z1 * z1 - z3 * z3},
        {{2, 2}, -2 * beta * z3},
        {{2, 3}, -2 * beta * z2 - 2 * z1 * z3 - 3 * eps * z3 * z3 * s},
        {{2, 4}, -3 * z1},
        {{2, 6}, -2 * z3},
        {{2, 8}, -2 * beta},
        {{2, 9}, -z1 - 3 * eps * z3 * s},
        {{2, 10}, -1.0},
        {{2, 15}, -1.0},
        {{2, 19}, -eps * s}};
    for (std::size_t a = 1; a <= 3; ++a) {
      for (Rank l = 1; l <= 19; ++l) {
        auto it = want.find({a, l});
        const double w = it == want.end() ? 0.0 : it->second;
        EXPECT_NEAR(e.forcing(a, l + 1), w, 1e-14) << "g^" << l << "_" << a;
      }
    }
  }
}

TEST(ExpandRhs, ZeroSystem) {
  auto table = MonomialTable::build(2, 3);
  const auto e = expand_rhs(zero_system(2), std::vector<double>{0.4, -2.0}, 1.0, table);
  for (const auto& j : e.jets) EXPECT_EQ(max_abs(j), 0.0);
}

TEST(ForwardSolve, RiccatiMap) {
  auto table = MonomialTable::build(1, 5);
  const auto map = forward_solve(riccati(), std::vector<double>{1.0}, 0.0, 1.0, table,
                                 IntegratorConfig::fixed(100));
  const std::vector<double> want{0.25, -0.125, 0.0625, -0.03125, 0.015625};
  EXPECT_NEAR(map.design_endpoint[0], 0.5, 1e-6);
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(map.coefficient(1, i + 2), want[i], 1e-6);
  EXPECT_EQ(map.m_dynamical, 1u);
  EXPECT_EQ(map.n_params, 0u);
}

TEST(ForwardSolve, ZeroSystemIsIdentity) {
  auto table = MonomialTable::build(3, 3);
  const std::vector<double> zd{0.1, 0.2, 0.3};
  for (auto* solve : {&forward_solve, &backward_solve}) {
    const auto map = solve(zero_system(3), zd, 0.0, 5.0, table, IntegratorConfig::adaptive(1e-12));
    for (std::size_t a = 1; a <= 3; ++a) {
      EXPECT_EQ(map.coefficient(a, 1), zd[a - 1]);
      for (Rank r = 2; r <= table->size(); ++r) EXPECT_EQ(map.coefficient(a, r), r == a + 1 ? 1.0 : 0.0);
    }
  }
}

TEST(ForwardSolve, ConstantLinearSystemGivesMatrixExponential) {
  const Mat a{{0.0, 1.0}, {-2.0, -0.3}};
  const OdeSystem lin(2, [a](auto z, double) {
    using T = state_value_t<decltype(z)>;
    return std::vector<T>{a[0][0] * z[0] + a[0][1] * z[1], a[1][0] * z[0] + a[1][1] * z[1]};
  });
  const double span = 1.7;
  auto table = MonomialTable::build(2, 2);
  const auto map = forward_solve(lin, std::vector<double>{0.5, -0.5}, 0.3, 0.3 + span, table,
                                 IntegratorConfig::adaptive(1e-13));
  Mat at = a;
  for (auto& row : at)
    for (auto& x : row) x *= span;
  const Mat e = expm_series(at);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(map.coefficient(i + 1, j + 2), e[i][j], 1e-10);
  for (Rank r = 4; r <= 6; ++r) EXPECT_NEAR(map.coefficient(1, r), 0.0, 1e-15);
}

TEST(CCoefficients, TwoVariableTable) {
  auto table = MonomialTable::build(2, 2);
  const auto c = c_coefficients(table);
  // (r, b, r', r'') -> C in degree >= 1 labels.
  const std::vector<std::tuple<Rank, std::size_t, Rank, Rank, unsigned>> rows{
      {1, 1, 1, 1, 1}, {1, 2, 2, 1, 1}, {2, 1, 1, 2, 1}, {2, 2, 2, 2, 1}, {3, 1, 1, 3, 1},
      {3, 1, 3, 1, 2}, {3, 2, 2, 3, 1}, {3, 2, 4, 1, 1}, {4, 1, 1, 4, 1}, {4, 1, 3, 2, 2},
      {4, 1, 4, 1, 1}, {4, 2, 2, 4, 1}, {4, 2, 4, 2, 1}, {4, 2, 5, 1, 2}, {5, 1, 1, 5, 1},
      {5, 1, 4, 2, 1}, {5, 2, 2, 5, 1}, {5, 2, 5, 2, 2}};
  ASSERT_EQ(c.entries().size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto [r, b, r1, r2, v] = rows[i];
    const CEntry& e = c.entries()[i];
    EXPECT_EQ(e.r, r + 1);
    EXPECT_EQ(e.b, b);
    EXPECT_EQ(e.r1, r1 + 1);
    EXPECT_EQ(e.r2, r2 + 1);
    EXPECT_EQ(e.value, v);
    EXPECT_EQ(c.at(r + 1, b, r1 + 1, r2 + 1), v);
  }
  // d/dz1(z1) * z1 = z1, so nothing lands on z1^2.
  EXPECT_EQ(c.at(2, 1, 2, 2), 1u);
  EXPECT_EQ(c.at(4, 1, 2, 2), 0u);
}

TEST(CCoefficients, DegreeLaw) {
  for (auto [m, p] : {std::pair<std::size_t, std::size_t>{2, 4}, {3, 4}, {4, 3}}) {
    auto table = MonomialTable::build(m, p);
    const auto c = c_coefficients(table);
    for (const auto& e : c.entries()) {
      EXPECT_EQ(table->degree_of(e.r1) - 1 + table->degree_of(e.r2), table->degree_of(e.r));
      EXPECT_GT(e.value, 0u);
      EXPECT_GE(table->degree_of(e.r1), 1u);
      EXPECT_GE(table->degree_of(e.r2), 1u);
    }
  }
}

TEST(CCoefficients, OneVariableBruteForce) {
  const unsigned p = 5;
  auto table = MonomialTable::build(1, p);
  const auto c = c_coefficients(table);
  // d/dz(z^j') z^j'' = j' z^(j'-1+j''); jet rank of z^j is j + 1.
  std::size_t expected = 0;
  for (unsigned j = 1; j <= p; ++j) {
    for (unsigned j1 = 1; j1 <= p; ++j1) {
      for (unsigned j2 = 1; j2 <= p; ++j2) {
        const unsigned want = (j1 - 1 + j2 == j) ? j1 : 0;
        EXPECT_EQ(c.at(j + 1, 1, j1 + 1, j2 + 1), want);
        expected += want != 0;
      }
    }
  }
  EXPECT_EQ(c.entries().size(), expected);
}

TEST(TwoVarOracle, Examples) {
  TwoVarBlock zero{}, ones{};
  for (auto& row : ones) row.fill(1.0);
  TwoVarBlock h{};
  for (auto& row : h) row.fill(0.7);
  const auto f0 = two_var_oracle_rhs(zero, h, Direction::forward);
  for (const auto& row : f0)
    for (double x : row) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(two_var_oracle_rhs(ones, ones, Direction::forward)[0][0], 2.0);
  EXPECT_EQ(two_var_oracle_rhs(ones, ones, Direction::backward)[0][2], -5.0);
}

TEST(TwoVarOracle, AgreesWithGenericMachinery) {
  auto table = MonomialTable::build(2, 2);
  const auto c = c_coefficients(table);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    TwoVarBlock g{}, h{};
    JetVector gj{Jet(table), Jet(table)}, hj{Jet(table), Jet(table)};
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t l = 0; l < 5; ++l) {
        g[a][l] = u(rng);
        h[a][l] = u(rng);
        gj[a][l + 2] = g[a][l];
        hj[a][l + 2] = h[a][l];
      }
    }
    const auto fwd = two_var_oracle_rhs(g, h, Direction::forward);
    const auto bwd = two_var_oracle_rhs(g, h, Direction::backward);
    const auto gf = forward_variational_rhs(gj, hj);
    const auto gb = backward_variational_rhs(c, gj, hj);
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t l = 0; l < 5; ++l) {
        EXPECT_NEAR(gf[a][l + 2], fwd[a][l], 1e-13);
        EXPECT_NEAR(gb[a][l + 2], bwd[a][l], 1e-13);
      }
    }
  }
}

TEST(BackwardSolve, MatchesForwardOnTwoVariableSystem) {
  auto table = MonomialTable::build(2, 3);
  const auto cfg = IntegratorConfig::adaptive(1e-12);
  const std::vector<double> zd{1.0, 2.0};
  const auto f = forward_solve(two_variable(), zd, 0.0, 1.0, table, cfg);
  const auto b = backward_solve(two_variable(), zd, 0.0, 1.0, table, cfg);
  EXPECT_LE(max_abs_difference(f, b), 1e-8);
  EXPECT_NEAR(b.design_endpoint[0], 0.5, 1e-10);
  EXPECT_NEAR(b.design_endpoint[1], 8.0, 1e-10);
}

TEST(BackwardSolve, MatchesForwardOnDuffing) {
  const auto cfg = IntegratorConfig::adaptive(1e-12);
  const duffing::ExpansionPoint at{0.3, 0.4, 0.5};
  const auto f = duffing::stroboscopic_taylor_map(0.1, 1.5, at, 3, cfg, duffing::SolveMethod::forward);
  const auto b = duffing::stroboscopic_taylor_map(0.1, 1.5, at, 3, cfg, duffing::SolveMethod::backward);
  EXPECT_LE(max_abs_difference(f, b), 1e-6);
  for (Rank r = 1; r <= 20; ++r) EXPECT_EQ(b.coefficient(3, r), f.coefficient(3, r));
}

TEST(BackwardSolve, RandomPolynomialSystems) {
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const auto cfg = IntegratorConfig::adaptive(1e-12);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t m = 1 + rng() % 3;
    const auto ps = random_system(rng, m);
    const OdeSystem sys = ps.to_ode();
    std::vector<double> zd(m);
    for (auto& x : zd) x = u(rng);
    auto table = MonomialTable::build(m, 3);
    const double t0 = u(rng);
    const auto f = forward_solve(sys, zd, t0, t0 + 0.5, table, cfg);
    const auto b = backward_solve(sys, zd, t0, t0 + 0.5, table, cfg);
    EXPECT_LE(max_abs_difference(f, b), 1e-8) << "trial " << trial;
  }
}

TEST(LiftParameters, DuffingLiftReproducesScaledSystem) {
  const double beta = 0.2, eps = 0.9;
  const OdeSystem lifted = duffing::duffing_scaled_rhs(beta, eps);
  EXPECT_EQ(lifted.dim(), 3u);
  EXPECT_EQ(lifted.param_count(), 1u);
  const std::vector<double> z{0.3, -1.1, 0.8};
  const double t = 1.3;
  const auto d = lifted(z, t);
  EXPECT_DOUBLE_EQ(d[0], z[1]);
  EXPECT_NEAR(d[1],
              -2 * beta * z[2] * z[1] - z[2] * z[2] * z[0] - z[0] * z[0] * z[0] -
                  eps * z[2] * z[2] * z[2] * std::sin(t),
              1e-15);
  EXPECT_EQ(d[2], 0.0);
}

TEST(LiftParameters, ParameterRowIsIdentityAndDynamicsMatchUnlifted) {
  const auto param = duffing::duffing_parametric(0.1, 1.5);
  const double sigma = 0.6;
  const auto lifted = lift_parameters(param, std::vector<double>{sigma});
  const OdeSystem bound = bind_parameters(param, std::vector<double>{sigma});
  const auto cfg = IntegratorConfig::adaptive(1e-12);
  const std::vector<double> z0{0.2, -0.1};

  auto t3 = MonomialTable::build(3, 3);
  const auto lm = forward_solve(lifted.system, lifted.initial_state(z0), 0.0, 2.0, t3, cfg);
  EXPECT_EQ(lm.n_params, 1u);
  for (Rank r = 1; r <= t3->size(); ++r) {
    EXPECT_EQ(lm.coefficient(3, r), r == 1 ? sigma : (r == 4 ? 1.0 : 0.0));
  }

  auto t2 = MonomialTable::build(2, 3);
  const auto um = forward_solve(bound, z0, 0.0, 2.0, t2, cfg);
  // Restrict the lifted map to zeta_3 = 0 and compare monomial by monomial.
  for (std::size_t a = 1; a <= 2; ++a) {
    for (Rank r = 1; r <= t2->size(); ++r) {
      auto e = t2->unrank(r);
      e.push_back(0);
      EXPECT_NEAR(lm.coefficient(a, t3->rank_of(e)), um.coefficient(a, r), 1e-9);
    }
  }
}

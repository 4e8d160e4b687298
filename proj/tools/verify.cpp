// Golden-value suite behind `jetmap verify`.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "commands.hpp"
#include "jetmap/jetmap.hpp"

namespace jetmap::cli {
namespace {

using namespace jetmap::duffing;
using io::format_double;

struct Outcome {
  bool pass = false;
  std::string observed;
  std::string expected;
};

// structural: exact algebra, no integration
// rk4:        fixed-step runs whose published output we reproduce
// rkf45:      values from adaptive integration at the suite tolerance
// dynamics:   qualitative behaviour of iterated maps
struct Golden {
  const char* id;
  const char* kind;
  const char* what;
  std::function<Outcome(double tol)> run;
};

std::string list(const std::vector<double>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s + "}";
}

template <class R>
std::string ulist(const R& v) {
  std::string s = "{";
  bool first = true;
  for (auto x : v) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + "}";
}

std::vector<double> coeffs(const Jet& u, std::size_t from = 1) {
  std::vector<double> v;
  for (Rank r = from; r <= u.size(); ++r) v.push_back(u[r]);
  return v;
}

Outcome near(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  bool ok = got.size() == want.size();
  for (std::size_t i = 0; ok && i < want.size(); ++i) ok = std::fabs(got[i] - want[i]) <= tol;
  return {ok, list(got), list(want) + " +- " + format_double(tol)};
}

Outcome near(double got, double want, double tol) {
  return {std::fabs(got - want) <= tol, format_double(got), format_double(want) + " +- " + format_double(tol)};
}

template <class T>
Outcome same(const T& got, const T& want, std::string g, std::string w) {
  return {got == want, std::move(g), std::move(w)};
}

std::vector<Jet> jet_state(const TablePtr& t, const std::vector<double>& z0) {
  std::vector<Jet> y;
  for (std::size_t a = 0; a < z0.size(); ++a) y.push_back(z0[a] + Jet::variable(t, a + 1));
  return y;
}

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

constexpr double kQf = 1.26082;
constexpr double kPf = 2.05452;

std::shared_ptr<const TaylorMap> m8(double tol) {
  static std::map<double, std::shared_ptr<const TaylorMap>> cache;
  auto& slot = cache[tol];
  if (!slot) {
    slot = std::make_shared<const TaylorMap>(stroboscopic_taylor_map(
        0.1, 25.0, ExpansionPoint::from_original(kQf, kPf, 1.285), 8, IntegratorConfig::adaptive(tol, ErrorNorm::mixed)));
  }
  return slot;
}

const std::vector<double> kDuffingRow1{
    -0.0493158, 0.973942, -0.110494, 5.51271, 3.54684, 3.46678,  11.2762, 2.36463, 1.0985,  23.3332,
    -1.03541,   -3.23761, -12.8064,  4.03421, -23.4342, -17.8967, 1.96148, 5.07403, -36.9009, 25.1379};
const std::vector<double> kDuffingRow2{
    0.439713, 1.05904,  0.427613, 3.3177,   0.0872459, 0.635397, -3.02822, 1.77416, -4.10115, 3.16981,
    -2.43002, -5.33643, -7.77038, -6.08476, -0.541465, -21.1672, -1.4091,  -9.54326, 14.6334, -39.2312};

std::vector<Golden> goldens() {
  std::vector<Golden> g;

  // --- labeling -------------------------------------------------------------
  g.push_back({"table.size.3_4", "structural", "L(3,4) = 35", [](double) {
                 return same<std::size_t>(table_size(3, 4), 35, std::to_string(table_size(3, 4)), "35");
               }});
  g.push_back({"table.size.2_2", "structural", "L(2,2) = 6", [](double) {
                 return same<std::size_t>(table_size(2, 2), 6, std::to_string(table_size(2, 2)), "6");
               }});
  g.push_back({"rank.giorgilli", "structural", "ranks of (0,0,0), (2,0,1), (1,2,1)", [](double) {
                 const std::vector<Rank> got{rank(std::vector<unsigned>{0, 0, 0}), rank(std::vector<unsigned>{2, 0, 1}),
                                             rank(std::vector<unsigned>{1, 2, 1})};
                 return same(got, std::vector<Rank>{1, 13, 28}, ulist(got), "{1,13,28}");
               }});
  g.push_back({"table.row17", "structural", "m=3,p=4 row 17 = (0,3,0)", [](double) {
                 const auto e = MonomialTable::build(3, 4)->unrank(17);
                 return same(e, ExponentVector{0, 3, 0}, ulist(e), "{0,3,0}");
               }});
  g.push_back({"table.two_variable", "structural", "m=2,p=3 listing in glex order", [](double) {
                 const auto t = MonomialTable::build(2, 3);
                 std::string got;
                 for (Rank r = 1; r <= t->size(); ++r) got += ulist(t->unrank(r));
                 const std::string want = "{0,0}{1,0}{0,1}{2,0}{1,1}{0,2}{3,0}{2,1}{1,2}{0,3}";
                 return same(got, want, got, want);
               }});
  g.push_back({"box.8", "structural", "B_8 and Brev_8 for m=3,p=4", [](double) {
                 const auto t = MonomialTable::build(3, 4);
                 const auto b = t->box(8), br = t->box_rev(8);
                 return Outcome{b == std::vector<Rank>{1, 3, 8} && br == std::vector<Rank>{8, 3, 1},
                                ulist(b) + " " + ulist(br), "{1,3,8} {8,3,1}"};
               }});
  g.push_back({"box.28", "structural", "B_28 for m=3,p=4", [](double) {
                 const auto b = MonomialTable::build(3, 4)->box(28);
                 return same(b, std::vector<Rank>{1, 2, 3, 4, 6, 7, 8, 9, 14, 15, 18, 28}, ulist(b),
                              "{1,2,3,4,6,7,8,9,14,15,18,28}");
               }});

  // --- jet algebra ----------------------------------------------------------
  g.push_back({"jet.basis", "structural", "C1 and X for m=1,p=2; X1 for m=2,p=2; X2 at rank 3", [](double) {
                 const auto t1 = MonomialTable::build(1, 2);
                 const auto t2 = MonomialTable::build(2, 2);
                 const auto got = coeffs(Jet::constant(t1, 1.0));
                 const auto x = coeffs(Jet::variable(t1, 1));
                 const auto x1 = coeffs(Jet::variable(t2, 1));
                 const double x2 = Jet::variable(MonomialTable::build(3, 2), 2)[3];
                 const bool ok = got == std::vector<double>{1, 0, 0} && x == std::vector<double>{0, 1, 0} &&
                                 x1 == std::vector<double>{0, 1, 0, 0, 0, 0} && x2 == 1.0;
                 return Outcome{ok, list(got) + list(x) + list(x1) + " " + format_double(x2),
                                "{1,0,0}{0,1,0}{0,1,0,0,0,0} 1"};
               }});
  g.push_back({"jet.add_scale", "structural", "0.1 {1,2,3} + 0.2 {4,5,6}", [](double) {
                 const auto t = MonomialTable::build(1, 2);
                 return near(coeffs(add(scale(0.1, Jet(t, {1, 2, 3})), scale(0.2, Jet(t, {4, 5, 6})))),
                             {0.9, 1.2, 1.5}, 1e-14);
               }});
  g.push_back({"jet.prod", "structural", "2 C1 + 3 Z*Z", [](double) {
                 const auto t = MonomialTable::build(1, 2);
                 const Jet z = Jet::variable(t, 1);
                 return near(coeffs(2.0 * Jet::constant(t, 1.0) + 3.0 * prod(z, z)), {2, 0, 3}, 1e-14);
               }});
  g.push_back({"jet.prod.k8", "structural", "product coefficient at rank 8, m=3,p=4", [](double) {
                 const auto t = MonomialTable::build(3, 4);
                 Jet u(t), v(t);
                 for (Rank r = 1; r <= 8; ++r) {
                   u[r] = 0.1 * static_cast<double>(r);
                   v[r] = 1.0 + 0.1 * static_cast<double>(r);
                 }
                 return near(prod(u, v)[8], 1.45, 1e-14);
               }});
  g.push_back({"jet.power0", "structural", "power(u, 0) = C1", [](double) {
                 const auto t = MonomialTable::build(2, 2);
                 return near(coeffs(power(Jet(t, {3, 1, 4, 1, 5, 9}), 0)), {1, 0, 0, 0, 0, 0}, 0.0);
               }});
  g.push_back({"taylor.one_variable", "structural", "1 + 2x + 3x^2 about 4", [](double) {
                 const auto t = MonomialTable::build(1, 2);
                 const Polynomial f(1, {{1, {0}}, {2, {1}}, {3, {2}}});
                 return near(coeffs(polyval_on_jets(f, std::vector<Jet>{4.0 + Jet::variable(t, 1)})), {57, 26, 3},
                             1e-14);
               }});
  g.push_back({"taylor.two_variable", "structural", "two-variable quadratic about (7,8), and its value", [](double) {
                 const auto t = MonomialTable::build(2, 2);
                 const Polynomial f(2, {{1, {0, 0}}, {2, {1, 0}}, {3, {0, 1}}, {4, {2, 0}}, {5, {1, 1}}, {6, {0, 2}}});
                 const Jet w =
                     polyval_on_jets(f, std::vector<Jet>{7.0 + Jet::variable(t, 1), 8.0 + Jet::variable(t, 2)});
                 auto got = coeffs(w);
                 got.push_back(eval(w, std::vector<double>{0.0, 0.0}));
                 return near(got, {899, 98, 134, 4, 5, 6, 899}, 1e-12);
               }});

  // --- variational equations ------------------------------------------------
  g.push_back({"vareq.c_table", "structural", "nonzero C coefficients for m=2 through degree 2", [](double) {
                 const auto c = c_coefficients(MonomialTable::build(2, 2));
                 std::string got;
                 for (const auto& e : c.entries()) {
                   got += "(" + std::to_string(e.r - 1) + std::to_string(e.b) + std::to_string(e.r1 - 1) +
                          std::to_string(e.r2 - 1) + ":" + std::to_string(e.value) + ")";
                 }
                 const std::string want =
                     "(1111:1)(1221:1)(2112:1)(2222:1)(3113:1)(3131:2)(3223:1)(3241:1)(4114:1)(4132:2)(4141:1)"
                     "(4224:1)(4242:1)(4251:2)(5115:1)(5142:1)(5225:1)(5252:2)";
                 return same(got, want, got, want);
               }});
  g.push_back({"vareq.unit_inputs", "structural", "two-variable forward and backward rates with unit inputs",
               [](double) {
                 TwoVarBlock ones{};
                 for (auto& row : ones) row.fill(1.0);
                 const double f = two_var_oracle_rhs(ones, ones, Direction::forward)[0][0];
                 const double b = two_var_oracle_rhs(ones, ones, Direction::backward)[0][2];
                 return Outcome{f == 2.0 && b == -5.0, format_double(f) + " " + format_double(b), "2 -5"};
               }});
  g.push_back({"vareq.duffing_forcing", "structural", "Duffing forcing terms at (.3,.4,.5), t = 1", [](double) {
                 const double beta = 0.1, eps = 1.5, t = 1.0;
                 const auto e = expand_rhs(duffing_scaled_rhs(beta, eps), std::vector<double>{0.3, 0.4, 0.5}, t,
                                           MonomialTable::build(3, 3));
                 // Jet rank = label + 1.
                 const std::vector<double> got{e.forcing(1, 3), e.forcing(2, 2), e.forcing(2, 9), e.forcing(2, 11),
                                               e.forcing(2, 20)};
                 return near(got, {1.0, -3 * 0.09 - 0.25, -2 * beta, -1.0, -eps * std::sin(t)}, 1e-14);
               }});
  g.push_back({"vareq.duffing_lift", "structural", "lifted sigma reproduces the scaled equations", [](double) {
                 const std::vector<double> z{0.3, -1.1, 0.8};
                 const auto d = duffing_scaled_rhs(0.2, 0.9)(z, 1.3);
                 const double s = z[2];
                 return near(d, {z[1], -2 * 0.2 * s * z[1] - s * s * z[0] - z[0] * z[0] * z[0] - 0.9 * s * s * s * std::sin(1.3), 0.0},
                             1e-14);
               }});

  // --- fixed-step integration -----------------------------------------------
  g.push_back({"rk4.scalar", "rk4", "z' = -2 t z^2, h = .1, ns = 10", [](double) {
                 return near(rk4(riccati(), std::vector<double>{1.0}, 0.0, 0.1, 10).state[0], 0.500001, 5e-7);
               }});
  g.push_back({"rk4.jet", "rk4", "same system as a jet, h = .01, ns = 100", [](double) {
                 const auto res = rk4(riccati(), jet_state(MonomialTable::build(1, 5), {1.0}), 0.0, 0.01, 100);
                 return near(coeffs(res.state[0]), {0.5, 0.25, -0.125, 0.0625, -0.03125, 0.015625}, 1e-6);
               }});
  g.push_back({"rk4.two_variable", "rk4", "two-variable jets at t = 1", [](double) {
                 const auto res = rk4(two_variable(), jet_state(MonomialTable::build(2, 3), {1.0, 2.0}), 0.0, 0.01, 100);
                 auto got = coeffs(res.state[0]);
                 const auto r2 = coeffs(res.state[1]);
                 got.insert(got.end(), r2.begin(), r2.end());
                 return near(got, {0.5, 0.25, 0, -0.125, 0, 0, 0.0625, 0, 0, 0, 8, 8, 4, 2, 4, 0, 0, 1, 0, 0}, 5e-7);
               }});
  g.push_back({"map.riccati", "rk4", "order-5 map of z' = -2 t z^2 over [0,1]", [](double) {
                 const auto m = forward_solve(riccati(), std::vector<double>{1.0}, 0.0, 1.0, MonomialTable::build(1, 5),
                                              IntegratorConfig::fixed(100));
                 return near(coeffs(m.rows[0]), {0.5, 0.25, -0.125, 0.0625, -0.03125, 0.015625}, 1e-6);
               }});
  g.push_back({"map.duffing", "rk4", "Duffing order-3 map, beta=.1 eps=1.5 at (.3,.4,.5), ns = 100", [](double) {
                 const auto m = stroboscopic_taylor_map(0.1, 1.5, {0.3, 0.4, 0.5}, 3, IntegratorConfig::fixed(100));
                 auto got = coeffs(m.rows[0]);
                 const auto r2 = coeffs(m.rows[1]);
                 got.insert(got.end(), r2.begin(), r2.end());
                 auto want = kDuffingRow1;
                 want.insert(want.end(), kDuffingRow2.begin(), kDuffingRow2.end());
                 auto o = near(got, want, 1e-4);
                 o.pass = o.pass && std::fabs(got[0] - want[0]) <= 1e-6 && std::fabs(got[20] - want[20]) <= 1e-6;
                 return o;
               }});
  g.push_back({"map.duffing.row3", "rk4", "parameter row stays {0.5, 0, 0, 1, 0, ...}", [](double) {
                 const auto m = stroboscopic_taylor_map(0.1, 1.5, {0.3, 0.4, 0.5}, 3, IntegratorConfig::fixed(100));
                 std::vector<double> want(20, 0.0);
                 want[0] = 0.5;
                 want[3] = 1.0;
                 return near(coeffs(m.rows[2]), want, 0.0);
               }});

  // --- adaptive integration -------------------------------------------------
  g.push_back({"rkf45.riccati", "rkf45", "z(1) of z' = -2 t z^2 is 1/2", [](double tol) {
                 const auto r = rkf45(riccati(), std::vector<double>{1.0}, 0.0, 1.0, IntegratorConfig::adaptive(tol));
                 return near(r.state[0], 0.5, 1e-10);
               }});
  g.push_back({"exact.orbit", "rkf45", "exact period map from (.6,1.6) at omega = 2, in scaled units", [](double tol) {
                 const ExactStroboscopicMap map({0.1, 1.5, 2.0}, IntegratorConfig::adaptive(tol));
                 const auto x = map.apply({0.6, 1.6});
                 return near(std::vector<double>{x[0] / 2.0, x[1] / 4.0}, {-0.0493158, 0.439713}, 2e-6);
               }});
  g.push_back({"exact.fixed_point", "rkf45", "unstable fixed point at beta=.1 eps=25 omega=1.285", [](double tol) {
                 const ExactStroboscopicMap map({0.1, 25.0, 1.285}, IntegratorConfig::adaptive(tol));
                 const auto fp = fixed_point_newton(map, {kQf, kPf});
                 const double mu = std::max(std::abs(fp.multipliers[0]), std::abs(fp.multipliers[1]));
                 // Newton converges to the nearby root; 1e-5 separates it from
                 // what a coarse tolerance produces.
                 auto o = near(std::vector<double>{fp.point[0], fp.point[1]}, {kQf, kPf}, 1e-5);
                 o.pass = o.pass && mu > 1.0;
                 o.observed += " |mu|max " + format_double(mu);
                 o.expected += ", |mu|max > 1";
                 return o;
               }});

  // --- dynamics -------------------------------------------------------------
  g.push_back({"scan.weak_forcing", "dynamics", "eps = .15: one cluster per omega over [0.2, 3]", [](double tol) {
                 const ExactMapSource src(0.1, 0.15, IntegratorConfig::adaptive(tol));
                 ScanOptions opts;
                 opts.record = 20;
                 const auto res = feigenbaum_scan(src, omega_grid(0.2, 3.0, 0.4), opts);
                 double worst = 0.0;
                 for (const auto& row : res.rows) worst = std::max(worst, row.samples.empty() ? 1e300 : spread(row.samples));
                 return Outcome{worst < 1e-6, "max spread " + format_double(worst), "< 1e-6"};
               }});
  g.push_back({"scan.hysteresis", "dynamics", "eps = 1.5: up and down sweeps disagree at omega = 2.2", [](double tol) {
                 const ExactMapSource src(0.1, 1.5, IntegratorConfig::adaptive(tol));
                 ScanOptions opts;
                 opts.transient = 300;
                 opts.record = 4;
                 const auto up = omega_grid(1.5, 2.2, 0.1);
                 std::vector<double> down = omega_grid(2.2, 3.0, 0.1);
                 std::reverse(down.begin(), down.end());
                 const auto a = feigenbaum_scan(src, up, opts).rows.back().samples.front();
                 const auto b = feigenbaum_scan(src, down, opts).rows.back().samples.front();
                 const double gap = std::hypot(a[0] - b[0], a[1] - b[1]);
                 return Outcome{gap > 0.5, "q up " + format_double(a[0]) + ", q down " + format_double(b[0]),
                                "branches more than 0.5 apart"};
               }});
  g.push_back({"scan.m8_doubling", "dynamics", "order-8 map: periods 1 -> 2 -> 4, first doubling near 1.268",
               [](double tol) {
                 const TaylorMapSource src(m8(tol));
                 ScanOptions opts;
                 opts.transient = 5000;
                 opts.record = 256;
                 opts.start = {kQf, kPf};
                 const auto res = feigenbaum_scan(src, omega_grid(1.24, 1.30, 1e-4), opts);
                 std::string seq;
                 int last = -2, stage = 0;
                 double first_two = 0.0;
                 for (const auto& row : res.rows) {
                   const int k = row.samples.empty() ? -1 : static_cast<int>(detect_period(row.samples).value_or(0));
                   if (k != last) seq += " " + std::to_string(k) + "@" + format_double(row.omega);
                   last = k;
                   if (stage == 0 && k == 1) stage = 1;
                   if (stage == 1 && k == 2) {
                     stage = 2;
                     first_two = row.omega;
                   }
                   if (stage == 2 && k == 4) stage = 3;
                 }
                 const bool ok = stage == 3 && first_two >= 1.263 && first_two <= 1.273;
                 return Outcome{ok, "period@omega:" + seq, "1, 2, 4 in order, 2 first in [1.263, 1.273]"};
               }});
  const auto strange = [](const std::vector<Vec2>& s) {
    bool finite = true;
    for (const auto& x : s) finite = finite && std::isfinite(x[0]) && std::isfinite(x[1]);
    const auto k = detect_period(s);
    return Outcome{finite && spread(s) < 10.0 && !k,
                   std::to_string(s.size()) + " points, spread " + format_double(spread(s)) +
                       (k ? ", period " + std::to_string(*k) : ", aperiodic"),
                   "bounded, aperiodic up to 64"};
  };
  g.push_back({"attract.exact", "dynamics", "exact map at omega = 1.2902: strange attractor", [strange](double tol) {
                 const ExactMapSource src(0.1, 25.0, IntegratorConfig::adaptive(tol));
                 return strange(attractor_sample(src, 1.2902, {kQf, kPf}, 2000, 10000));
               }});
  g.push_back({"attract.m8", "dynamics", "order-8 map at omega = 1.2902: strange attractor", [strange](double tol) {
                 const TaylorMapSource src(m8(tol));
                 return strange(attractor_sample(src, 1.2902, {kQf, kPf}, 5000, 10000));
               }});
  return g;
}

}  // namespace

int cmd_verify(const VerifyOptions& opts) {
  const auto suite = goldens();
  if (opts.list) {
    for (const auto& g : suite) std::printf("%-24s %-10s %s\n", g.id, g.kind, g.what);
    return 0;
  }
  std::printf("integrator tolerance %s\n", format_double(opts.tol).c_str());
  int failed = 0;
  for (const auto& g : suite) {
    Outcome o;
    try {
      o = g.run(opts.tol);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), "-"};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %-24s %-10s %s\n       observed %s\n       expected %s\n", o.pass ? "PASS" : "FAIL", g.id,
                g.kind, g.what, o.observed.c_str(), o.expected.c_str());
  }
  std::printf("%d of %zu checks failed\n", failed, suite.size());
  return failed == 0 ? 0 : 2;
}

}  // namespace jetmap::cli

#include <benchmark/benchmark.h>

#include <array>
#include <memory>
#include <random>

#include "jetmap/duffing.hpp"
#include "jetmap/jet.hpp"
#include "jetmap/monomial_table.hpp"
#include "jetmap/variational.hpp"

using namespace jetmap;

namespace {

Jet random_jet(const TablePtr& t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet j(t);
  for (Rank r = 1; r <= t->size(); ++r) j[r] = u(rng);
  return j;
}

void BM_Prod(benchmark::State& state) {
  const auto t = MonomialTable::build(static_cast<std::size_t>(state.range(0)),
                                      static_cast<std::size_t>(state.range(1)));
  std::mt19937_64 rng(7);
  const Jet a = random_jet(t, rng), b = random_jet(t, rng);
  for (auto _ : state) benchmark::DoNotOptimize(prod(a, b));
  state.counters["monomials"] = static_cast<double>(t->size());
}
BENCHMARK(BM_Prod)->Args({2, 8})->Args({3, 4})->Args({3, 8})->Args({6, 6});

void BM_TableBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(MonomialTable::build(3, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_TableBuild)->Arg(4)->Arg(8);

// Duffing period map with fixed-step RK4, ns = 100.
void BM_DuffingForwardRk4(benchmark::State& state) {
  const auto cfg = IntegratorConfig::fixed(100);
  const duffing::ExpansionPoint at{0.3, 0.4, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(duffing::stroboscopic_taylor_map(0.1, 1.5, at, static_cast<std::size_t>(state.range(0)),
                                                              cfg, duffing::SolveMethod::forward));
  }
}
BENCHMARK(BM_DuffingForwardRk4)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_DuffingBackwardRk4(benchmark::State& state) {
  const auto cfg = IntegratorConfig::fixed(100);
  const duffing::ExpansionPoint at{0.3, 0.4, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(duffing::stroboscopic_taylor_map(0.1, 1.5, at, static_cast<std::size_t>(state.range(0)),
                                                              cfg, duffing::SolveMethod::backward));
  }
}
BENCHMARK(BM_DuffingBackwardRk4)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

std::shared_ptr<const TaylorMap> m8() {
  static const auto map = std::make_shared<const TaylorMap>(duffing::stroboscopic_taylor_map(
      0.1, 25.0, duffing::ExpansionPoint::from_original(1.26082, 2.05452, 1.285), 8));
  return map;
}

void BM_PolynomialMapApply(benchmark::State& state) {
  const duffing::PolynomialStroboscopicMap map(m8(), 1.2902);
  duffing::Vec2 x{1.26, 2.05};
  for (auto _ : state) {
    x = map.apply(x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_PolynomialMapApply);

void BM_ExactMapApply(benchmark::State& state) {
  const duffing::ExactStroboscopicMap map({0.1, 25.0, 1.2902});
  duffing::Vec2 x{1.26, 2.05};
  for (auto _ : state) {
    x = map.apply(x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ExactMapApply)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

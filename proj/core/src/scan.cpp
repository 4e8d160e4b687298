#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "jetmap/duffing.hpp"

namespace jetmap::duffing {
namespace {

struct Run {
  std::vector<Vec2> samples;
  Vec2 last{};
  std::string error;
};

Run run_orbit(const PlanarMap& map, Vec2 start, std::size_t transient, std::size_t record) {
  Run run;
  Vec2 x = start;
  try {
    for (std::size_t i = 0; i < transient; ++i) x = map.apply(x);
    run.samples.reserve(record);
    for (std::size_t i = 0; i < record; ++i) {
      x = map.apply(x);
      run.samples.push_back(x);
    }
    run.last = x;
  } catch (const DivergenceError& e) {
    run.samples.clear();
    run.error = e.what();
  } catch (const StiffnessError& e) {
    run.samples.clear();
    run.error = e.what();
  }
  return run;
}

void require_monotone(std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("feigenbaum_scan: empty omega grid");
  const bool up = grid.size() < 2 || grid[1] > grid[0];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !(grid[i] > 0.0)) {
      throw std::invalid_argument("feigenbaum_scan: omega values must be finite and > 0");
    }
    if (i > 0 && (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1]))) {
      throw std::invalid_argument("feigenbaum_scan: omega grid must be strictly monotone");
    }
  }
}

}  // namespace

ScanResult feigenbaum_scan(const MapSource& source, std::span<const double> omega_grid,
                           const ScanOptions& opts) {
  require_monotone(omega_grid);
  if (opts.transient < 1 || opts.record < 1) {
    throw std::invalid_argument("feigenbaum_scan: transient and record must be >= 1");
  }
  ScanResult result;
  result.source = source.kind();
  result.transient = opts.transient;
  result.record = opts.record;
  result.seed = opts.seed;
  result.rows.resize(omega_grid.size());

  if (opts.seed == SeedPolicy::continuation) {
    Vec2 seed = opts.start;
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
      auto run = run_orbit(*source.at(omega_grid[i]), seed, opts.transient, opts.record);
      seed = run.error.empty() ? run.last : opts.start;
      result.rows[i] = {omega_grid[i], std::move(run.samples), std::move(run.error)};
    }
    return result;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < omega_grid.size(); i = next++) {
      auto run = run_orbit(*source.at(omega_grid[i]), opts.start, opts.transient, opts.record);
      result.rows[i] = {omega_grid[i], std::move(run.samples), std::move(run.error)};
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opts.threads, omega_grid.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return result;
}

std::vector<Vec2> attractor_sample(const MapSource& source, double omega, Vec2 start,
                                   std::size_t transient, std::size_t count) {
  if (count < 1) throw std::invalid_argument("attractor_sample: count must be >= 1");
  const auto map = source.at(omega);
  Vec2 x = start;
  for (std::size_t i = 0; i < transient; ++i) x = map->apply(x);
  std::vector<Vec2> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    x = map->apply(x);
    out.push_back(x);
  }
  return out;
}

std::optional<unsigned> detect_period(std::span<const Vec2> samples, unsigned max_period, double tol) {
  for (unsigned k = 1; k <= max_period && 2 * k <= samples.size(); ++k) {
    bool ok = true;
    for (std::size_t i = k; i < samples.size() && ok; ++i) {
      const Vec2& rep = samples[i % k];
      ok = std::hypot(samples[i][0] - rep[0], samples[i][1] - rep[1]) < tol;
    }
    if (ok) return k;
  }
  return std::nullopt;
}

double spread(std::span<const Vec2> samples) {
  if (samples.empty()) return 0.0;
  double lo0 = samples[0][0], hi0 = lo0, lo1 = samples[0][1], hi1 = lo1;
  for (const auto& s : samples) {
    lo0 = std::min(lo0, s[0]);
    hi0 = std::max(hi0, s[0]);
    lo1 = std::min(lo1, s[1]);
    hi1 = std::max(hi1, s[1]);
  }
  return std::hypot(hi0 - lo0, hi1 - lo1);
}

std::vector<double> omega_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("omega_grid: need lo <= hi and step > 0");
  }
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + static_cast<double>(i) * step;
  return g;
}

}  // namespace jetmap::duffing

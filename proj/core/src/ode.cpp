#include "jetmap/ode.hpp"

#include <stdexcept>

namespace jetmap {

OdeSystem::OdeSystem(std::size_t dim, ScalarRhs scalar, JetRhs jet, std::size_t param_count)
    : dim_(dim), params_(param_count), scalar_(std::move(scalar)), jet_(std::move(jet)) {
  if (dim_ == 0) throw std::invalid_argument("OdeSystem: dimension must be >= 1");
  if (params_ > dim_) throw std::invalid_argument("OdeSystem: more parameters than variables");
  if (!scalar_ || !jet_) throw std::invalid_argument("OdeSystem: missing right-hand side");
}

std::vector<double> OdeSystem::operator()(std::span<const double> z, double t) const {
  if (z.size() != dim_) throw std::invalid_argument("OdeSystem: state has wrong dimension");
  auto d = scalar_(z, t);
  if (d.size() != dim_) throw std::logic_error("OdeSystem: rhs returned wrong dimension");
  return d;
}

std::vector<Jet> OdeSystem::operator()(std::span<const Jet> z, double t) const {
  if (z.size() != dim_) throw std::invalid_argument("OdeSystem: state has wrong dimension");
  require_common_table(z);
  auto d = jet_(z, t);
  if (d.size() != dim_) throw std::logic_error("OdeSystem: rhs returned wrong dimension");
  return d;
}

IntegratorConfig IntegratorConfig::fixed(std::size_t ns, double h) {
  IntegratorConfig c;
  c.mode = StepMode::fixed;
  c.ns = ns;
  c.h = h;
  return c;
}

IntegratorConfig IntegratorConfig::adaptive(double tol, ErrorNorm norm) {
  IntegratorConfig c;
  c.mode = StepMode::adaptive;
  c.tol = tol;
  c.norm = norm;
  return c;
}

void IntegratorConfig::validate() const {
  if (mode == StepMode::fixed) {
    if (ns < 1) throw std::invalid_argument("integrator: ns must be >= 1");
    if (h < 0.0 || !std::isfinite(h)) throw std::invalid_argument("integrator: h must be > 0");
  } else {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("integrator: tol must be > 0");
    if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("integrator: safety must be in (0, 1]");
    if (!(min_factor > 0.0 && min_factor < 1.0 && max_factor > 1.0)) {
      throw std::invalid_argument("integrator: need 0 < min_factor < 1 < max_factor");
    }
    if (!(h_min_fraction > 0.0)) throw std::invalid_argument("integrator: h_min_fraction must be > 0");
    if (initial_step < 0.0) throw std::invalid_argument("integrator: initial_step must be >= 0");
  }
}

}  // namespace jetmap

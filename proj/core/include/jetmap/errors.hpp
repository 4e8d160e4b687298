#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetmap {

// Two jets built over different monomial tables were combined.
class TableMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested (m, p) would produce a table larger than the configured cap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Adaptive step size fell below h_min.
class StiffnessError : public std::runtime_error {
 public:
  StiffnessError(const std::string& what, double t, double h)
      : std::runtime_error(what), t_(t), h_(h) {}
  double time() const noexcept { return t_; }
  double step() const noexcept { return h_; }

 private:
  double t_;
  double h_;
};

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Newton system is singular, i.e. a multiplier of the k-fold map sits at 1.
class SingularJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jetmap

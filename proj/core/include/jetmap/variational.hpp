#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "jetmap/jet.hpp"
#include "jetmap/ode.hpp"

namespace jetmap {

// Final state as polynomials in the initial deviations. Rows use jet ranks
// (rank 1 is the constant), so row a's constant is the design endpoint and
// its degree >= 1 coefficients are h^r_a. Lifted parameters are the trailing
// n_params variables and their rows are exact identities.
struct TaylorMap {
  std::size_t m_dynamical = 0;
  std::size_t n_params = 0;
  double t_i = 0.0;
  double t_f = 0.0;
  std::vector<double> expansion_point;
  std::vector<double> design_endpoint;
  JetVector rows;

  std::size_t dim() const noexcept { return m_dynamical + n_params; }
  const TablePtr& table() const { return rows.at(0).table(); }
  std::size_t order() const { return table()->order(); }
  // Row a (1-based), coefficient at jet rank r.
  double coefficient(std::size_t a, Rank r) const { return rows.at(a - 1).coeff(r); }
  // Absolute final state for the initial deviation zeta (length dim()).
  std::vector<double> apply(std::span<const double> zeta) const;
};

double max_abs_difference(const TaylorMap& a, const TaylorMap& b);

struct RhsExpansion {
  std::vector<double> design_value;  // f_a(z^d, t)
  JetVector jets;                    // f_a(z^d + zeta, t) in powers of zeta
  // g^r_a for jet rank r >= 2; a is 1-based.
  double forcing(std::size_t a, Rank r) const { return jets.at(a - 1).coeff(r); }
};

RhsExpansion expand_rhs(const OdeSystem& system, std::span<const double> zd, double t,
                        const TablePtr& table);

// Integrates the jets zd0_a + X_a from t_i to t_f.
TaylorMap forward_solve(const OdeSystem& system, std::span<const double> zd0, double t_i,
                        double t_f, const TablePtr& table, const IntegratorConfig& cfg);

struct CEntry {
  Rank r;       // jet rank of the product monomial
  std::size_t b;  // 1-based variable that is differentiated
  Rank r1;      // r': the differentiated monomial
  Rank r2;      // r'': the forcing monomial
  unsigned value;
};

// Nonzero C^r_{b r' r''}: d/dz_b(G_{r'}) * G_{r''} = sum_r C^r_{b r' r''} G_r,
// over r', r'' of degree >= 1 and r of degree <= p. Sorted by (r, b, r', r'').
class CCoefficientTable {
 public:
  explicit CCoefficientTable(TablePtr table);
  const TablePtr& table() const noexcept { return table_; }
  std::span<const CEntry> entries() const noexcept { return entries_; }
  unsigned at(Rank r, std::size_t b, Rank r1, Rank r2) const;

 private:
  TablePtr table_;
  std::vector<CEntry> entries_;
};

CCoefficientTable c_coefficients(const TablePtr& table);

// Integrates the design orbit forward to t_f, then the design orbit together
// with the linear equations for h^r_a backward from h = identity at t_f.
TaylorMap backward_solve(const OdeSystem& system, std::span<const double> zd0, double t_i,
                         double t_f, const TablePtr& table, const IntegratorConfig& cfg);

// Time derivatives of the map coefficients. g[a] holds g^r_a and h[a] holds
// h^r_a as jets (constant terms ignored); a runs over the rows of h.
JetVector forward_variational_rhs(std::span<const Jet> g, std::span<const Jet> h);
JetVector backward_variational_rhs(const CCoefficientTable& c, std::span<const Jet> g,
                                   std::span<const Jet> h);

enum class Direction { forward, backward };

// Two variables through degree 2, indexed [a-1][r-1] with r in the degree >= 1
// labels 1..5 = z1, z2, z1^2, z1 z2, z2^2. Hand-written equations used to check
// the generic variational machinery.
using TwoVarBlock = std::array<std::array<double, 5>, 2>;
TwoVarBlock two_var_oracle_rhs(const TwoVarBlock& g, const TwoVarBlock& h, Direction direction);

// A right-hand side f(z, lambda, t) with parameters lambda that enter
// polynomially.
class ParametricSystem {
 public:
  using ScalarRhs = std::function<std::vector<double>(std::span<const double>,
                                                      std::span<const double>, double)>;
  using JetRhs =
      std::function<std::vector<Jet>(std::span<const Jet>, std::span<const Jet>, double)>;

  ParametricSystem(std::size_t dim, std::size_t params, ScalarRhs scalar, JetRhs jet);

  template <class F>
    requires std::is_invocable_v<const F&, std::span<const double>, std::span<const double>,
                                 double>
  ParametricSystem(std::size_t dim, std::size_t params, F f)
      : ParametricSystem(
            dim, params,
            [f](std::span<const double> z, std::span<const double> l, double t) {
              return std::vector<double>(f(z, l, t));
            },
            [f](std::span<const Jet> z, std::span<const Jet> l, double t) {
              return std::vector<Jet>(f(z, l, t));
            }) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t params() const noexcept { return params_; }
  const ScalarRhs& scalar() const noexcept { return scalar_; }
  const JetRhs& jet() const noexcept { return jet_; }

 private:
  std::size_t dim_;
  std::size_t params_;
  ScalarRhs scalar_;
  JetRhs jet_;
};

struct LiftedSystem {
  OdeSystem system;
  std::vector<double> parameter_values;
  // (z0, parameter values)
  std::vector<double> initial_state(std::span<const double> z0) const;
};

// Parameters become trailing variables with zero right-hand side.
LiftedSystem lift_parameters(const ParametricSystem& system, std::span<const double> values);
// Parameters frozen at the given values.
OdeSystem bind_parameters(const ParametricSystem& system, std::span<const double> values);

}  // namespace jetmap

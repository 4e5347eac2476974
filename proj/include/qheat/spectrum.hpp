#pragma once

// Eigenvalues of central Markov semigroup generators on Aut+(B), n = dim B.
//
// With Pi_k(x) = S_{2k}(sqrt x), a generating functional (a, nu) acts on the
// level-k coefficient space by
//   lambda_k = ( -a Pi_k'(n) + int_0^n (Pi_k(x) - Pi_k(n)) / (n - x) dnu(x) ) / Pi_k(n),
// where ' is d/dx; equivalently -a S_{2k}'(sqrt n) / (2 sqrt n) for the drift
// term. The heat semigroup is a = 1, nu = 0.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qheat/numeric.hpp"
#include "qheat/quadrature.hpp"

namespace qheat {

struct GeneratingFunctional {
  double drift = 1.0;
  MeasureSpec levy;

  static GeneratingFunctional heat() { return {}; }
  bool is_heat() const { return drift == 1.0 && levy.is_zero(); }

  /// Throws unless drift >= 0, the measure is valid on [0, n] and (drift, levy) is nontrivial.
  void validate(int n) const;

  friend GeneratingFunctional operator+(const GeneratingFunctional& a, const GeneratingFunctional& b) {
    return {a.drift + b.drift, a.levy + b.levy};
  }
};

/// -lambda_k = Pi_k'(n) / Pi_k(n) for the heat semigroup, as an exact rational.
BigRational heat_rate_exact(int n, int k);

/// -lambda_k from the closed form with sqrt n = 2 cosh(phi):
///   ((2k+1) coth((2k+1) phi) - coth(phi)) / (4 sqrt(n) sinh(phi)).
/// Valid for any k and n >= 5; used where k is far beyond exact evaluation.
double heat_rate_closed_form(int n, int k);

/// Heat-semigroup eigenvalue lambda_k <= 0. Requires n >= 4.
double eigenvalue(int n, int k);

/// Eigenvalue for a general generating functional; the Levy integral uses the
/// exact difference quotient of Pi_k evaluated in extended precision.
double eigenvalue_general(int n, int k, const GeneratingFunctional& g, double tol = 1e-13);

/// lambda_k = -k(k+2)/6 for the n = 4 cases S_4^+ / SO(3).
double so3_eigenvalue(int k);

/// Pi_k(n), the dimension of the level-k irreducible representation.
BigInt dimension(int n, int k);
/// Pi_k(n)^2
BigInt multiplicity(int n, int k);

/// The bound sandwich k/n <= -lambda_k <= k / (sqrt n (sqrt n - 2)), checked in extended precision.
bool heat_bounds_hold(int n, int k);

struct SpectrumRow {
  int k = 0;
  double lambda = 0.0;
  BigInt n_k;
  BigInt m_k;
  double lower = 0.0;
  double upper = 0.0;
  /// Empty when bounds were not checked (general generating functional or n = 4).
  std::optional<bool> bounds_ok;
};

struct SpectrumTable {
  int n = 0;
  std::vector<SpectrumRow> rows;
  std::string warning;

  bool all_bounds_ok() const;
};

SpectrumTable spectrum_table(int n, int kmax, const GeneratingFunctional& g = GeneratingFunctional::heat(),
                             double tol = 1e-13);

/// (c_0, ..., c_kmax) with c_k = -lambda_k for the heat semigroup.
Eigen::VectorXd heat_rates(int n, int kmax);

}  // namespace qheat

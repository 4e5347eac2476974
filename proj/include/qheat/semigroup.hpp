#pragma once

// Heat semigroup T_t = exp(t T_L) on central elements and the functional
// inequalities it satisfies: ultracontractivity, hypercontractivity,
// log-Sobolev and spectral gap.

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qheat/central_algebra.hpp"
#include "qheat/spectrum.hpp"

namespace qheat {

/// n plus a generating functional, with a lazily filled ladder c_k = -lambda_k.
class SemigroupSpec {
 public:
  explicit SemigroupSpec(int n, GeneratingFunctional g = GeneratingFunctional::heat(), double tol = 1e-13);

  int n() const { return n_; }
  const GeneratingFunctional& generator() const { return g_; }

  /// c_k >= 0; c_0 = 0.
  double rate(int k) const;
  /// (c_0, ..., c_kmax)
  Eigen::VectorXd rates(int kmax) const;

 private:
  struct Ladder {
    std::mutex mu;
    std::vector<double> c;
  };

  int n_;
  GeneratingFunctional g_;
  double tol_;
  std::shared_ptr<Ladder> ladder_;
};

/// c_k(x) -> exp(-c_k t) c_k(x)
CentralElement<double> apply_heat(const CentralElement<double>& x, double t, const SemigroupSpec& spec);

/// (1 - T_L)^{-gamma}: c_k(x) -> (1 + c_k)^{-gamma} c_k(x)
CentralElement<double> bessel_potential(const CentralElement<double>& x, double gamma, const SemigroupSpec& spec);

/// -h(x* T_L x) = sum_k c_k |c_k(x)|^2
double dirichlet_form(const CentralElement<double>& x, const SemigroupSpec& spec);

struct UltraParams {
  double alpha = 0.2;
  double beta = 2.0;
  double gamma = 1.0;

  /// alpha = 1/n, beta = 2D, gamma = D (rapid decay with constant D).
  static UltraParams for_dimension(int n, double D = 1.0) { return {1.0 / n, 2.0 * D, D}; }
};

/// f(t) with e = exp(-2 alpha t):
///   (beta^2 e (1+e) + 2 beta gamma e (1-e) + gamma^2 (1-e)^2) / (1-e)^3
double ultra_bound(double t, const UltraParams& p);

/// sum_{k>=1} (2k+1)^2 Y^k = (Y^3 - 2Y^2 + 9Y) / (1-Y)^3
double hyper_series(double y);

struct HyperTime {
  double y = 0.0;
  double tau = 0.0;
  /// |hyper_series(y) - 1/((p-1) D^2)|
  double residual = 0.0;
};

/// The unique root Y in (0,1) of hyper_series(Y) = 1/((p-1) D^2), and
/// tau_p = -(n/2) log Y. The left side increases from 0 to infinity on (0,1).
HyperTime hypercontractivity_time(double p, int n, double D = 1.0);
inline double tau_p(double p, int n, double D = 1.0) { return hypercontractivity_time(p, n, D).tau; }

/// d = (log(11 + sqrt 105) - log 2) / log 3, so that 3^d solves t^2 - 11 t + 4 = 0.
double two_to_p_exponent();

/// R_4(d) = 3 (3 * 3^d - 1) / (3^d - 1)^2
double r4(double d);

/// (d n / 2) log(p - 1) + (1 - 2/p) n log D; defined for p >= 4.
double two_to_p_time(double p, int n, double D = 1.0);

/// c = t_0 / 2 with t_0 read as the 2 -> 4 hypercontractivity time. Heuristic.
inline double lsi_c_from_hyper(int n, double D = 1.0) { return tau_p(4.0, n, D); }

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double quadrature_error = 0.0;
  bool pass = false;
};

/// pass <=> lhs <= rhs + tolerance + quadrature_error
InequalityReport make_report(std::string name, double lhs, double rhs, double quadrature_error, double tolerance);

/// ||T_t x||_p against ||x||_2. Relative tolerance applies to the rhs.
InequalityReport hyper_margin(const CentralElement<double>& x, double t, double p, const SemigroupSpec& spec,
                              double rel_tol = 1e-6);

/// ||T_t x||_inf (reduced) against sqrt(f(t)) ||x||_2.
InequalityReport ultra_margin(const CentralElement<double>& x, double t, const SemigroupSpec& spec,
                              const UltraParams& params, double rel_tol = 1e-6);

/// lhs = h(x^2 log x) - ||x||_2^2 log ||x||_2, rhs = (c/2) dirichlet_form(x).
/// x must be positive on the reduced side; 0 log 0 = 0.
InequalityReport log_sobolev_defect(const CentralElement<double>& x, double c, const SemigroupSpec& spec,
                                    double tol = 1e-14);

/// lhs = (1/n) sum_{k>=1} |c_k|^2, rhs = dirichlet_form(x); exact sums.
InequalityReport spectral_gap_defect(const CentralElement<double>& x, const SemigroupSpec& spec,
                                     double tolerance = 1e-12);

}  // namespace qheat

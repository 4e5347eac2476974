#include "qheat/semigroup.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "qheat/polynomial.hpp"

namespace qheat {

SemigroupSpec::SemigroupSpec(int n, GeneratingFunctional g, double tol)
    : n_(n), g_(std::move(g)), tol_(tol), ladder_(std::make_shared<Ladder>()) {
  if (n < 4) throw std::invalid_argument("SemigroupSpec: n must be >= 4");
  g_.validate(n);
}

double SemigroupSpec::rate(int k) const {
  if (k < 0) throw std::invalid_argument("SemigroupSpec: negative level");
  std::lock_guard lock(ladder_->mu);
  auto& c = ladder_->c;
  while (static_cast<int>(c.size()) <= k) {
    const int j = static_cast<int>(c.size());
    if (g_.is_heat()) {
      c.push_back(j <= chebyshev_cache_limit() || n_ < 5 ? heat_rate_exact(n_, j).convert_to<double>()
                                                          : heat_rate_closed_form(n_, j));
    } else {
      c.push_back(-eigenvalue_general(n_, j, g_, tol_));
    }
  }
  return c[static_cast<std::size_t>(k)];
}

Eigen::VectorXd SemigroupSpec::rates(int kmax) const {
  Eigen::VectorXd out(std::max(kmax + 1, 0));
  if (kmax >= 0) rate(kmax);
  for (int k = 0; k <= kmax; ++k) out[k] = rate(k);
  return out;
}

namespace {

CentralElement<double> scale_levels(const CentralElement<double>& x, const Eigen::VectorXd& factors) {
  return CentralElement<double>(x.n(), x.coeffs().cwiseProduct(factors));
}

void require_same_n(const CentralElement<double>& x, const SemigroupSpec& spec) {
  if (!x.is_zero() && x.n() != spec.n()) throw std::invalid_argument("element and semigroup have different n");
}

}  // namespace

CentralElement<double> apply_heat(const CentralElement<double>& x, double t, const SemigroupSpec& spec) {
  if (!(t >= 0)) throw std::invalid_argument("apply_heat: t must be >= 0");
  require_same_n(x, spec);
  if (x.is_zero()) return x;
  const Eigen::VectorXd c = spec.rates(x.top_level());
  return scale_levels(x, (-t * c.array()).exp().matrix());
}

CentralElement<double> bessel_potential(const CentralElement<double>& x, double gamma, const SemigroupSpec& spec) {
  require_same_n(x, spec);
  if (x.is_zero()) return x;
  const Eigen::VectorXd c = spec.rates(x.top_level());
  return scale_levels(x, (1.0 + c.array()).pow(-gamma).matrix());
}

double dirichlet_form(const CentralElement<double>& x, const SemigroupSpec& spec) {
  require_same_n(x, spec);
  if (x.is_zero()) return 0.0;
  const Eigen::VectorXd c = spec.rates(x.top_level());
  return c.dot(x.coeffs().cwiseAbs2());
}

double ultra_bound(double t, const UltraParams& p) {
  if (!(t > 0)) throw std::invalid_argument("ultra_bound: t must be > 0");
  if (!(p.alpha > 0) || p.beta < 0 || p.gamma < 0) throw std::invalid_argument("ultra_bound: invalid parameters");
  const double e = std::exp(-2.0 * p.alpha * t);
  const double one_minus = -std::expm1(-2.0 * p.alpha * t);
  const double num = p.beta * p.beta * e * (1.0 + e) + 2.0 * p.beta * p.gamma * e * one_minus +
                     p.gamma * p.gamma * one_minus * one_minus;
  return num / (one_minus * one_minus * one_minus);
}

double hyper_series(double y) {
  if (!(y >= 0) || !(y < 1)) throw std::invalid_argument("hyper_series: Y must be in [0, 1)");
  const double om = 1.0 - y;
  return (y * y * y - 2.0 * y * y + 9.0 * y) / (om * om * om);
}

HyperTime hypercontractivity_time(double p, int n, double D) {
  if (!(p > 2) || !std::isfinite(p)) throw std::invalid_argument("tau_p: p must be > 2");
  if (n < 1) throw std::invalid_argument("tau_p: n must be positive");
  if (!(D > 0)) throw std::invalid_argument("tau_p: D must be positive");
  const double target = 1.0 / ((p - 1.0) * D * D);
  auto g = [target](double y) { return hyper_series(y) - target; };

  // g(0) < 0; walk the upper end towards 1 until the sign flips.
  double hi = 0.5;
  while (g(hi) <= 0) hi = 0.5 * (1.0 + hi);
  boost::uintmax_t iters = 200;
  const auto bracket =
      boost::math::tools::toms748_solve(g, 0.0, hi, -target, g(hi), boost::math::tools::eps_tolerance<double>(53), iters);
  // Pick the bracket end with the smaller residual.
  const double y = std::abs(g(bracket.first)) <= std::abs(g(bracket.second)) ? bracket.first : bracket.second;
  return {y, -0.5 * n * std::log(y), std::abs(g(y))};
}

double two_to_p_exponent() {
  return (std::log(11.0 + std::sqrt(105.0)) - std::log(2.0)) / std::log(3.0);
}

double r4(double d) {
  const double q = std::pow(3.0, d);
  return 3.0 * (3.0 * q - 1.0) / ((q - 1.0) * (q - 1.0));
}

double two_to_p_time(double p, int n, double D) {
  if (!(p >= 4))
    throw std::invalid_argument(
        "two_to_p_time: p must be >= 4 (the bound holds for p >= 4 - eps0 with eps0 unquantified)");
  if (!(D > 0)) throw std::invalid_argument("two_to_p_time: D must be positive");
  const double d = two_to_p_exponent();
  return 0.5 * d * n * std::log(p - 1.0) + (1.0 - 2.0 / p) * n * std::log(D);
}

InequalityReport make_report(std::string name, double lhs, double rhs, double quadrature_error, double tolerance) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.quadrature_error = quadrature_error;
  r.pass = lhs <= rhs + tolerance + quadrature_error;
  return r;
}

InequalityReport hyper_margin(const CentralElement<double>& x, double t, double p, const SemigroupSpec& spec,
                              double rel_tol) {
  if (!(p > 2)) throw std::invalid_argument("hyper_margin: p must be > 2");
  const NormEstimate lhs = lp_norm(apply_heat(x, t, spec), p);
  const double rhs = l2_norm(x);
  return make_report("hyper", lhs.value, rhs, lhs.error, rel_tol * rhs);
}

InequalityReport ultra_margin(const CentralElement<double>& x, double t, const SemigroupSpec& spec,
                              const UltraParams& params, double rel_tol) {
  const double lhs = sup_norm_reduced(apply_heat(x, t, spec));
  const double rhs = std::sqrt(ultra_bound(t, params)) * l2_norm(x);
  return make_report("ultra", lhs, rhs, 0.0, rel_tol * rhs);
}

InequalityReport log_sobolev_defect(const CentralElement<double>& x, double c, const SemigroupSpec& spec,
                                    double tol) {
  if (!(c > 0)) throw std::invalid_argument("log_sobolev_defect: c must be positive");
  if (x.is_zero()) throw std::invalid_argument("log_sobolev_defect: x must be nonzero");
  if (!is_positive_reduced(x)) throw std::invalid_argument("log_sobolev_defect: x must be positive");
  auto entropy_density = [&x](double theta) {
    const double g = class_function(x, theta);
    return g < 1e-14 ? 0.0 : g * g * std::log(g);
  };
  AdaptiveOptions opts;
  opts.order = 20;
  const QuadratureResult ent = weyl_integral(entropy_density, tol, opts);
  const double norm2 = l2_norm_squared(x);
  const double lhs = ent.value - 0.5 * norm2 * std::log(norm2);
  const double rhs = 0.5 * c * dirichlet_form(x, spec);
  return make_report("lsi", lhs, rhs, ent.error_estimate, 0.0);
}

InequalityReport spectral_gap_defect(const CentralElement<double>& x, const SemigroupSpec& spec, double tolerance) {
  require_same_n(x, spec);
  double tail = 0.0;
  for (int k = 1; k <= x.top_level(); ++k) tail += x.coeff(k) * x.coeff(k);
  const double lhs = tail / spec.n();
  return make_report("gap", lhs, dirichlet_form(x, spec), 0.0, tolerance);
}

}  // namespace qheat

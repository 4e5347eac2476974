#include "qheat/spectrum.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qheat/polynomial.hpp"

namespace qheat {
namespace {

void require_level(int k) {
  if (k < 0) throw std::invalid_argument("level k must be >= 0");
}

}  // namespace

void GeneratingFunctional::validate(int n) const {
  if (!(drift >= 0) || !std::isfinite(drift)) throw std::invalid_argument("generating functional: drift must be >= 0");
  levy.validate(n);
  if (drift == 0.0 && levy.is_zero()) throw std::invalid_argument("generating functional: (a, nu) is trivial");
}

BigRational heat_rate_exact(int n, int k) {
  require_level(k);
  if (n < 4) throw std::invalid_argument("eigenvalue: n must be >= 4");
  if (k == 0) return BigRational(0);
  const BigInt x(n);
  return BigRational(eval_poly(pi_poly_derivative(k), x), eval_poly(pi_poly(k), x));
}

double heat_rate_closed_form(int n, int k) {
  require_level(k);
  if (n < 5) throw std::invalid_argument("heat_rate_closed_form: n must be >= 5");
  if (k == 0) return 0.0;
  const double root = std::sqrt(static_cast<double>(n));
  const double phi = std::acosh(0.5 * root);
  const double m = 2.0 * k + 1.0;
  return (m / std::tanh(m * phi) - 1.0 / std::tanh(phi)) / (4.0 * root * std::sinh(phi));
}

double eigenvalue(int n, int k) {
  const BigRational rate = heat_rate_exact(n, k);
  return k == 0 ? 0.0 : -rate.convert_to<double>();
}

double eigenvalue_general(int n, int k, const GeneratingFunctional& g, double tol) {
  require_level(k);
  if (n < 4) throw std::invalid_argument("eigenvalue_general: n must be >= 4");
  g.validate(n);
  if (k == 0) return 0.0;

  const BigInt x(n);
  const IntPolynomial pi = pi_poly(k);
  const BigInt pi_n = eval_poly(pi, x);
  double result = -g.drift * BigRational(eval_poly(pi_poly_derivative(k), x), pi_n).convert_to<double>();

  if (!g.levy.is_zero()) {
    // (Pi_k(x) - Pi_k(n)) / (n - x) / Pi_k(n), an exact polynomial; its
    // alternating coefficients need the extra digits near x = n.
    const IntPolynomial q = difference_quotient(pi, x);
    const HighFloat scale = HighFloat(pi_n);
    auto integrand = [&q, &scale](double t) { return (eval_poly(q, HighFloat(t)) / scale).convert_to<double>(); };
    result += integrate_measure(integrand, g.levy, static_cast<double>(n), tol);
  }
  return result;
}

double so3_eigenvalue(int k) {
  require_level(k);
  return -static_cast<double>(k) * (k + 2) / 6.0;
}

BigInt dimension(int n, int k) {
  require_level(k);
  if (n < 4) throw std::invalid_argument("dimension: n must be >= 4");
  return eval_poly(pi_poly(k), BigInt(n));
}

BigInt multiplicity(int n, int k) {
  const BigInt d = dimension(n, k);
  return d * d;
}

bool heat_bounds_hold(int n, int k) {
  if (n < 5) throw std::invalid_argument("heat bounds need n >= 5");
  const BigRational rate = heat_rate_exact(n, k);
  if (rate < BigRational(k, n)) return false;
  const HighFloat root = sqrt(HighFloat(n));
  const HighFloat upper = HighFloat(k) / (root * (root - 2));
  return HighFloat(rate) <= upper;
}

bool SpectrumTable::all_bounds_ok() const {
  for (const auto& r : rows)
    if (r.bounds_ok && !*r.bounds_ok) return false;
  return true;
}

SpectrumTable spectrum_table(int n, int kmax, const GeneratingFunctional& g, double tol) {
  if (kmax < 0) throw std::invalid_argument("spectrum_table: kmax must be >= 0");
  if (n < 4) throw std::invalid_argument("spectrum_table: n must be >= 4");
  SpectrumTable table;
  table.n = n;
  const bool heat = g.is_heat();
  if (n == 4) table.warning = "n = 4: outside the bound regime n >= 5; bounds not checked";

  const double root = std::sqrt(static_cast<double>(n));
  for (int k = 0; k <= kmax; ++k) {
    SpectrumRow row;
    row.k = k;
    row.lambda = heat ? eigenvalue(n, k) : eigenvalue_general(n, k, g, tol);
    row.n_k = dimension(n, k);
    row.m_k = row.n_k * row.n_k;
    row.lower = static_cast<double>(k) / n;
    row.upper = n > 4 ? k / (root * (root - 2.0)) : std::numeric_limits<double>::infinity();
    if (heat && n >= 5) row.bounds_ok = heat_bounds_hold(n, k);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Eigen::VectorXd heat_rates(int n, int kmax) {
  Eigen::VectorXd c(kmax + 1);
  for (int k = 0; k <= kmax; ++k) c[k] = k <= chebyshev_cache_limit() ? heat_rate_exact(n, k).convert_to<double>() : heat_rate_closed_form(n, k);
  return c;
}

}  // namespace qheat

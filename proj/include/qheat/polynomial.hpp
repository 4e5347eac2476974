#pragma once

// Exact single-variable polynomials over big integers / rationals, and the
// Chebyshev families used by the character calculus:
//   S_0 = 1, S_1 = x, S_{k+1} = x S_k - S_{k-1}        (second kind, x = 2cos)
//   Pi_k(x) = S_{2k}(sqrt x)                           (character of level k)

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qheat/numeric.hpp"

namespace qheat {

/// Dense polynomial with ascending coefficients. The zero polynomial has no
/// coefficients and degree -1; otherwise the leading coefficient is nonzero.
template <class Coeff>
class Polynomial {
 public:
  using coeff_type = Coeff;

  Polynomial() = default;
  explicit Polynomial(std::vector<Coeff> ascending) : c_(std::move(ascending)) { trim(); }
  Polynomial(std::initializer_list<Coeff> ascending) : c_(ascending) { trim(); }

  static Polynomial constant(Coeff value) { return Polynomial(std::vector<Coeff>{std::move(value)}); }
  static Polynomial monomial(std::size_t degree, Coeff value = Coeff(1)) {
    std::vector<Coeff> c(degree + 1, Coeff(0));
    c[degree] = std::move(value);
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }

  template <class Other>
  Polynomial<Other> cast() const {
    std::vector<Other> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(numeric_cast<Other>(v));
    return Polynomial<Other>(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> out(a.c_.size() + b.c_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// x -> x * p(x)
  Polynomial shifted() const {
    if (is_zero()) return {};
    std::vector<Coeff> out(c_.size() + 1, Coeff(0));
    std::copy(c_.begin(), c_.end(), out.begin() + 1);
    return Polynomial(std::move(out));
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
      const Coeff& v = p.c_[static_cast<std::size_t>(i)];
      if (v == Coeff(0)) continue;
      if (!first) os << " + ";
      os << "(" << v << ")";
      if (i > 0) os << "x^" << i;
      first = false;
    }
    return os;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Coeff(0)) c_.pop_back();
  }

  std::vector<Coeff> c_;
};

using IntPolynomial = Polynomial<BigInt>;
using RatPolynomial = Polynomial<BigRational>;

/// Horner evaluation. Exact whenever X is an exact type (BigInt, BigRational).
template <class Coeff, class X>
X eval_poly(const Polynomial<Coeff>& p, const X& x) {
  X acc(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + numeric_cast<X>(*it);
  return acc;
}

template <class Coeff>
Polynomial<Coeff> derivative(const Polynomial<Coeff>& p) {
  if (p.degree() < 1) return {};
  std::vector<Coeff> out(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) out[i - 1] = p.coeffs()[i] * Coeff(static_cast<long>(i));
  return Polynomial<Coeff>(std::move(out));
}

/// The polynomial q with q(x) = (p(x) - p(a)) / (a - x) for x != a.
/// Synthetic division of p(x) - p(a) by (x - a), then negation; exact.
template <class Coeff>
Polynomial<Coeff> difference_quotient(const Polynomial<Coeff>& p, const Coeff& a) {
  if (p.degree() < 1) return {};
  const auto& c = p.coeffs();
  const std::size_t d = c.size() - 1;
  std::vector<Coeff> q(d);
  q[d - 1] = c[d];
  for (std::size_t i = d - 1; i >= 1; --i) q[i - 1] = c[i] + a * q[i];
  for (auto& v : q) v = -v;
  return Polynomial<Coeff>(std::move(q));
}

inline RatPolynomial difference_quotient(const IntPolynomial& p, const BigRational& a) {
  return difference_quotient(p.cast<BigRational>(), a);
}

/// For an even polynomial p, the polynomial r with r(x) = p(sqrt x).
IntPolynomial even_part_in_square(const IntPolynomial& p);

/// S_k, Chebyshev polynomial of the second kind in the 2cos normalization.
/// Memoized up to chebyshev_cache_limit(); larger k are built from the cached tail.
IntPolynomial cheb_s(int k);

/// Pi_k(x) = S_{2k}(sqrt x); degree k, memoized alongside S_k.
IntPolynomial pi_poly(int k);

/// Derivative of Pi_k, memoized.
IntPolynomial pi_poly_derivative(int k);

void set_chebyshev_cache_limit(int k_max);
int chebyshev_cache_limit();

/// Levels appearing in U_k (x) U_s, each with multiplicity one (SO(3) fusion rule).
std::vector<int> fusion_range(int k, int s);

}  // namespace qheat

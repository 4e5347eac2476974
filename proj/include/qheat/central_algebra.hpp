#pragma once

// Central elements x = sum_k c_k chi_k of L^inf(Aut+(B)), n = dim B.
//
// Norms go through two commutative models of the character algebra:
//  * reduced (von Neumann) side: chi_k is transferred isometrically to the
//    SO(3) class function chi~_k(theta) = sin((2k+1) theta/2) / sin(theta/2)
//    with Weyl measure (2/pi) sin^2(theta/2) dtheta on [0, pi];
//  * universal side: C*(chi_k) = C([0, n]) with chi_k -> Pi_k(t).
// The two sup norms differ for n > 4 (chi_1 at n = 5: 3 vs 4).
//
// For central f with coefficients c_k, n_k ||f^(k)||_HS^2 = |c_k|^2 (Schur
// orthogonality), so Fourier-side weights read off |c_k| directly.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "qheat/numeric.hpp"
#include "qheat/polynomial.hpp"
#include "qheat/quadrature.hpp"

namespace qheat {

namespace detail {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class Scalar>
Scalar conj(const Scalar& v) {
  if constexpr (is_complex<Scalar>::value) {
    return std::conj(v);
  } else {
    return v;
  }
}

template <class Scalar>
auto abs2(const Scalar& v) {
  if constexpr (is_complex<Scalar>::value) {
    return std::norm(v);
  } else {
    return Scalar(v * v);
  }
}

}  // namespace detail

template <class Scalar = double>
class CentralElement {
 public:
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  CentralElement() = default;
  CentralElement(int n, Coefficients coeffs) : n_(n), c_(std::move(coeffs)) { trim(); }

  /// value * chi_k
  static CentralElement character(int n, int k, Scalar value = Scalar(1)) {
    if (k < 0) throw std::invalid_argument("CentralElement: negative level");
    Coefficients c = Coefficients::Zero(k + 1);
    c[k] = value;
    return CentralElement(n, std::move(c));
  }
  static CentralElement unit(int n) { return character(n, 0); }

  int n() const { return n_; }
  /// Highest level present; -1 for zero.
  int top_level() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 0; }
  const Coefficients& coeffs() const { return c_; }
  Scalar coeff(int k) const { return k >= 0 && k < c_.size() ? c_[k] : Scalar(0); }

  CentralElement& operator+=(const CentralElement& o) {
    require_same_n(o);
    const Eigen::Index m = std::max(c_.size(), o.c_.size());
    Coefficients sum = Coefficients::Zero(m);
    sum.head(c_.size()) = c_;
    sum.head(o.c_.size()) += o.c_;
    c_ = std::move(sum);
    trim();
    return *this;
  }
  friend CentralElement operator+(CentralElement a, const CentralElement& b) { return a += b; }
  friend CentralElement operator*(const Scalar& s, CentralElement a) {
    a.c_ *= s;
    a.trim();
    return a;
  }
  friend bool operator==(const CentralElement& a, const CentralElement& b) {
    return a.n_ == b.n_ && a.c_.size() == b.c_.size() && a.c_ == b.c_;
  }

  void require_same_n(const CentralElement& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CentralElement: mismatched n");
  }

 private:
  void trim() {
    Eigen::Index m = c_.size();
    while (m > 0 && c_[m - 1] == Scalar(0)) --m;
    c_.conservativeResize(m);
  }

  int n_ = 5;
  Coefficients c_;
};

/// Fusion product: chi_k chi_s = sum_{j=|k-s|}^{k+s} chi_j, extended bilinearly.
template <class Scalar>
CentralElement<Scalar> multiply(const CentralElement<Scalar>& x, const CentralElement<Scalar>& y) {
  x.require_same_n(y);
  using Coefficients = typename CentralElement<Scalar>::Coefficients;
  if (x.is_zero() || y.is_zero()) return CentralElement<Scalar>(x.n(), Coefficients());
  const int kx = x.top_level(), ky = y.top_level();
  Coefficients out = Coefficients::Zero(kx + ky + 1);
  for (int k = 0; k <= kx; ++k) {
    if (x.coeffs()[k] == Scalar(0)) continue;
    for (int s = 0; s <= ky; ++s) {
      const Scalar w = x.coeffs()[k] * y.coeffs()[s];
      for (int j = std::abs(k - s); j <= k + s; ++j) out[j] += w;
    }
  }
  return CentralElement<Scalar>(x.n(), std::move(out));
}

/// Characters are self-adjoint, so x* conjugates coefficients.
template <class Scalar>
CentralElement<Scalar> adjoint(const CentralElement<Scalar>& x) {
  return CentralElement<Scalar>(x.n(), x.coeffs().unaryExpr([](const Scalar& v) { return detail::conj(v); }));
}

/// h(x) = c_0
template <class Scalar>
Scalar haar(const CentralElement<Scalar>& x) {
  return x.coeff(0);
}

/// sum |c_k|^2, exact for exact scalars.
template <class Scalar>
auto l2_norm_squared(const CentralElement<Scalar>& x) {
  using Real = decltype(detail::abs2(Scalar(0)));
  Real acc(0);
  for (Eigen::Index k = 0; k < x.coeffs().size(); ++k) acc += detail::abs2(x.coeffs()[k]);
  return acc;
}

template <class Scalar>
double l2_norm(const CentralElement<Scalar>& x) {
  return std::sqrt(numeric_cast<double>(l2_norm_squared(x)));
}

/// Parses "c0,c1,...,cK".
CentralElement<double> parse_element(int n, std::string_view text);
/// One-column CSV (one coefficient per line, optional header).
CentralElement<double> read_element(int n, const std::string& path);

/// chi~_k(theta); the removable singularity at theta = 0 is replaced by 2k+1 below 1e-6.
double so3_character(int k, double theta);

/// sum_k c_k chi~_k(theta)
double class_function(const CentralElement<double>& x, double theta);

/// sum_k c_k Pi_k(t), forward recurrence Pi_{k+1} = (t-2) Pi_k - Pi_{k-1}.
double universal_function(const CentralElement<double>& x, double t);

struct NormEstimate {
  double value = 0.0;
  /// Quadrature error propagated through the 1/p power.
  double error = 0.0;
};

/// ||x||_p = ((2/pi) int |sum c_k chi~_k|^p sin^2(theta/2))^{1/p}; tol is relative to ||x||_p^p.
NormEstimate lp_norm(const CentralElement<double>& x, double p, double tol = 1e-12);

/// max_theta |sum c_k chi~_k(theta)|: the L^inf (reduced) norm.
double sup_norm_reduced(const CentralElement<double>& x, double tol = 1e-13);

/// max_{t in [0,n]} |sum c_k Pi_k(t)|: the universal C*-norm.
double sup_norm_universal(const CentralElement<double>& x, double tol = 1e-13);

/// min_theta sum c_k chi~_k(theta) (grid of 4096 points plus local refinement).
double min_reduced(const CentralElement<double>& x, double tol = 1e-13);

bool is_positive_reduced(const CentralElement<double>& x, double tol = 1e-10);

}  // namespace qheat

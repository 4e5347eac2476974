#include <doctest.h>

#include "oracles.hpp"
#include "qheat/polynomial.hpp"

using namespace qheat;

TEST_CASE("Pi_k matches the binomial expansion of S_2k") {
  CHECK(pi_poly(0) == IntPolynomial{1});
  CHECK(pi_poly(1) == IntPolynomial{-1, 1});
  CHECK(pi_poly(2) == IntPolynomial{1, -3, 1});
  for (int k = 0; k <= 40; ++k) {
    const auto expect = oracle::pi_coeffs(k);
    CHECK(pi_poly(k) == IntPolynomial(expect));
  }
}

TEST_CASE("S_k recurrence and the even part") {
  CHECK(cheb_s(0) == IntPolynomial{1});
  CHECK(cheb_s(1) == IntPolynomial{0, 1});
  CHECK(cheb_s(3) == IntPolynomial{0, -2, 0, 1});
  for (int k = 0; k <= 20; ++k) CHECK(even_part_in_square(cheb_s(2 * k)) == pi_poly(k));
  CHECK_THROWS_AS(even_part_in_square(cheb_s(3)), std::invalid_argument);
}

TEST_CASE("S_k(2 cos theta) against sin((k+1) theta)/sin theta") {
  for (int k = 0; k <= 40; ++k) {
    // Integer coefficients reach 1e8 with alternating signs; Horner in double
    // would lose the answer, so evaluate in extended precision.
    const IntPolynomial p = cheb_s(k);
    for (int i = 1; i < 200; ++i) {
      const double theta = oracle::kPi * i / 200.0;
      const double v = eval_poly(p, HighFloat(2.0 * std::cos(theta))).convert_to<double>();
      CHECK(std::abs(v - oracle::chebyshev_trig(k, theta)) < 1e-10);
    }
  }
}

TEST_CASE("Fusion rule with exact integers") {
  for (int k = 0; k <= 12; ++k) {
    for (int s = 0; s <= 12; ++s) {
      IntPolynomial sum;
      for (int j : fusion_range(k, s)) sum += pi_poly(j);
      CHECK(pi_poly(k) * pi_poly(s) == sum);
    }
  }
  CHECK(fusion_range(3, 1) == std::vector<int>{2, 3, 4});
}

TEST_CASE("Three-term recurrence for Pi_k") {
  const IntPolynomial x_minus_2{-2, 1};
  for (int k = 1; k <= 30; ++k) CHECK(pi_poly(k + 1) == x_minus_2 * pi_poly(k) - pi_poly(k - 1));
}

TEST_CASE("Derivative and difference quotient") {
  const IntPolynomial p{1, -3, 1};
  CHECK(derivative(p) == IntPolynomial{-3, 2});
  CHECK(pi_poly_derivative(2) == IntPolynomial{-3, 2});
  // (p(x) - p(a)) / (a - x) for a = 5: (x^2 - 3x - 10) / (5 - x) = -(x + 2)
  CHECK(difference_quotient(p, BigInt(5)) == IntPolynomial{-2, -1});
  for (int k = 1; k <= 10; ++k) {
    const auto q = difference_quotient(pi_poly(k), BigInt(7));
    for (int x = -3; x <= 10; ++x) {
      if (x == 7) continue;
      const BigInt lhs = eval_poly(q, BigInt(x)) * (7 - x);
      CHECK(lhs == eval_poly(pi_poly(k), BigInt(x)) - eval_poly(pi_poly(k), BigInt(7)));
    }
  }
}

TEST_CASE("Polynomial arithmetic basics") {
  const IntPolynomial a{1, 2}, b{-1, 0, 3};
  CHECK((a + b) == IntPolynomial{0, 2, 3});
  CHECK((a - a).is_zero());
  CHECK((a * b) == IntPolynomial{-1, -2, 3, 6});
  CHECK((-a) == IntPolynomial{-1, -2});
  CHECK(eval_poly(b, BigInt(2)) == 11);
  CHECK(eval_poly(b.cast<BigRational>(), BigRational(1, 3)) == BigRational(-2, 3));
}

TEST_CASE("Chebyshev cache limit does not change values") {
  const int old = chebyshev_cache_limit();
  const IntPolynomial before = pi_poly(30);
  set_chebyshev_cache_limit(8);
  CHECK(pi_poly(30) == before);
  CHECK(pi_poly(30) == IntPolynomial(oracle::pi_coeffs(30)));
  set_chebyshev_cache_limit(old);
  CHECK(chebyshev_cache_limit() == old);
}

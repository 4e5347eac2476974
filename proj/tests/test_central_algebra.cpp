#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "qheat/central_algebra.hpp"
#include "qheat/sampling.hpp"

using namespace qheat;
using CE = CentralElement<double>;

namespace {

std::vector<double> as_vector(const CE& x) { return std::vector<double>(x.coeffs().data(), x.coeffs().data() + x.coeffs().size()); }

}  // namespace

TEST_CASE("Element basics") {
  const CE x = parse_element(5, "1, 0.5, 0, 0");
  CHECK(x.top_level() == 1);
  CHECK(x.coeff(1) == 0.5);
  CHECK(x.coeff(7) == 0.0);
  CHECK(haar(x) == 1.0);
  CHECK(l2_norm_squared(x) == 1.25);
  CHECK((x + CE::character(5, 1, -0.5)).top_level() == 0);
  CHECK((0.0 * x).is_zero());
  CHECK_THROWS_AS(parse_element(5, "1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element(5, "1,x"), std::invalid_argument);
  CHECK_THROWS_AS(x + CE::unit(6), std::invalid_argument);
}

TEST_CASE("Element files") {
  const auto path = std::filesystem::temp_directory_path() / "qheat_element_test.csv";
  {
    std::ofstream out(path);
    out << "coeff\n1\n-2\n0.25\n";
  }
  const CE x = read_element(6, path.string());
  CHECK(x.n() == 6);
  CHECK(x.top_level() == 2);
  CHECK(x.coeff(1) == -2.0);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_element(6, path.string()), std::invalid_argument);
}

TEST_CASE("Fusion product agrees with pointwise products of class functions") {
  Prng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CE x = random_element(5, trial % 6, rng), y = random_element(5, (trial * 7) % 5, rng);
    const CE xy = multiply(x, y);
    for (int i = 0; i <= 50; ++i) {
      const double t = oracle::kPi * i / 50.0;
      CHECK(class_function(xy, t) == doctest::Approx(class_function(x, t) * class_function(y, t)).epsilon(1e-11));
      const double u = 5.0 * i / 50.0;
      CHECK(universal_function(xy, u) == doctest::Approx(universal_function(x, u) * universal_function(y, u)).epsilon(1e-10));
    }
  }
}

TEST_CASE("Exact scalars") {
  using R = CentralElement<BigRational>;
  R::Coefficients a(2), b(2);
  a << BigRational(1, 2), BigRational(1, 3);
  b << BigRational(0), BigRational(3);
  const R p = multiply(R(5, a), R(5, b));
  REQUIRE(p.top_level() == 2);
  CHECK(p.coeff(0) == 1);  // (1/3)(3) chi_1 chi_1 contributes chi_0
  CHECK(p.coeff(1) == BigRational(5, 2));
  CHECK(p.coeff(2) == 1);
  CHECK(l2_norm_squared(R(5, a)) == BigRational(13, 36));
  using C = CentralElement<std::complex<double>>;
  C::Coefficients z(2);
  z << std::complex<double>(1, 2), std::complex<double>(0, -1);
  CHECK(adjoint(C(5, z)).coeff(0) == std::complex<double>(1, -2));
  CHECK(l2_norm_squared(C(5, z)) == 6.0);
}

TEST_CASE("Class functions against the sine formula") {
  for (int k = 0; k <= 30; ++k) {
    for (int i = 0; i <= 100; ++i) {
      const double t = oracle::kPi * i / 100.0;
      std::vector<double> v(k + 1, 0.0);
      v[k] = 1.0;
      CHECK(class_function(CE::character(5, k), t) == doctest::Approx(oracle::class_fn(v, t)).epsilon(1e-9).scale(1.0));
      CHECK(so3_character(k, t) == doctest::Approx(oracle::class_fn(v, t)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("Parseval: lp_norm at p = 2 is the coefficient norm") {
  Prng rng(5);
  for (int i = 0; i < 30; ++i) {
    const CE x = random_element(5, i % 16, rng);
    CHECK(lp_norm(x, 2.0).value == doctest::Approx(l2_norm(x)).epsilon(1e-10));
  }
}

TEST_CASE("lp norms against a Simpson oracle") {
  Prng rng(9);
  for (double p : {1.0, 1.5, 3.0, 4.0, 6.0}) {
    for (int i = 0; i < 4; ++i) {
      const CE x = random_element(5, 3 + i, rng);
      const NormEstimate est = lp_norm(x, p);
      CHECK(est.value == doctest::Approx(oracle::lp_norm_simpson(as_vector(x), p)).epsilon(1e-6));
      CHECK(est.error <= 1e-10 * est.value);
    }
  }
  CHECK(lp_norm(CE::unit(5), 3.0).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lp_norm(CE(), 3.0).value == 0.0);
  CHECK_THROWS_AS(lp_norm(CE::unit(5), 0.5), std::invalid_argument);
}

TEST_CASE("lp norms are monotone in p (probability space)") {
  Prng rng(21);
  for (int i = 0; i < 10; ++i) {
    const CE x = random_element(5, 8, rng);
    double prev = 0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0, 8.0}) {
      const double v = lp_norm(x, p).value;
      CHECK(v >= prev * (1 - 1e-12));
      prev = v;
    }
    CHECK(sup_norm_reduced(x) >= prev * (1 - 1e-12));
  }
}

TEST_CASE("Sup norms of characters") {
  for (int k = 0; k <= 20; ++k) CHECK(std::abs(sup_norm_reduced(CE::character(5, k)) - (2 * k + 1)) < 1e-9);
  for (int k = 0; k <= 10; ++k) {
    const double pn = oracle::pi_at(k, BigInt(5)).convert_to<double>();
    CHECK(std::abs(sup_norm_universal(CE::character(5, k)) - pn) < 1e-9);
  }
  // The two norms differ for n > 4: chi_1 at n = 5 gives 3 and 4.
  CHECK(sup_norm_reduced(CE::character(5, 1)) == doctest::Approx(3.0));
  CHECK(sup_norm_universal(CE::character(5, 1)) == doctest::Approx(4.0));
  // and agree at n = 4
  CHECK(sup_norm_universal(CE::character(4, 3)) == doctest::Approx(7.0));
}

TEST_CASE("Sup norm with an interior maximum") {
  // 1 - chi_1 + 0.3 chi_2: compare against a dense grid.
  const CE x = parse_element(5, "1,-1,0.3");
  double dense = 0;
  for (int i = 0; i <= 200000; ++i) dense = std::max(dense, std::abs(oracle::class_fn(as_vector(x), oracle::kPi * i / 200000)));
  CHECK(sup_norm_reduced(x) == doctest::Approx(dense).epsilon(1e-9));
  CHECK(sup_norm_reduced(x) >= dense);
}

TEST_CASE("Minimum and positivity") {
  CHECK(min_reduced(CE::character(5, 1)) == doctest::Approx(-1.0));
  CHECK(!is_positive_reduced(CE::character(5, 1)));
  CHECK(is_positive_reduced(parse_element(5, "1,0.001")));
  Prng rng(3);
  for (int i = 0; i < 10; ++i) {
    const CE x = random_positive_element(5, 6, rng, 0.1);
    CHECK(min_reduced(x) == doctest::Approx(0.1).epsilon(1e-9));
  }
}

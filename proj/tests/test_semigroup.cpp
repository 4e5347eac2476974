#include <doctest.h>

#include "oracles.hpp"
#include "qheat/sampling.hpp"
#include "qheat/semigroup.hpp"

using namespace qheat;
using CE = CentralElement<double>;

TEST_CASE("Rates ladder") {
  const SemigroupSpec spec(5);
  CHECK(spec.rate(0) == 0.0);
  CHECK(spec.rate(1) == 0.25);
  const Eigen::VectorXd c = spec.rates(12);
  for (int k = 1; k <= 12; ++k) CHECK(c[k] == doctest::Approx(oracle::rate_root_sum(5, k)).epsilon(1e-12));
  CHECK(spec.rate(400) == doctest::Approx(heat_rate_closed_form(5, 400)).epsilon(1e-14));
  CHECK_THROWS_AS(SemigroupSpec(3), std::invalid_argument);

  GeneratingFunctional g;
  g.drift = 3.0;
  const SemigroupSpec scaled(6, g);
  CHECK(scaled.rate(4) == doctest::Approx(3.0 * SemigroupSpec(6).rate(4)).epsilon(1e-13));
}

TEST_CASE("Semigroup action") {
  const SemigroupSpec spec(6);
  const CE x = parse_element(6, "1,2,-1,0.5");
  CHECK(apply_heat(x, 0.0, spec) == x);
  const CE a = apply_heat(apply_heat(x, 0.3, spec), 0.7, spec);
  const CE b = apply_heat(x, 1.0, spec);
  for (int k = 0; k <= 3; ++k) CHECK(a.coeff(k) == doctest::Approx(b.coeff(k)).epsilon(1e-14));
  CHECK(apply_heat(x, 2.0, spec).coeff(0) == 1.0);
  CHECK(apply_heat(x, 2.0, spec).coeff(1) == doctest::Approx(2.0 * std::exp(-2.0 / 5.0)));
  CHECK_THROWS_AS(apply_heat(x, -1.0, spec), std::invalid_argument);

  const CE bp = bessel_potential(x, 1.0, spec);
  CHECK(bp.coeff(1) == doctest::Approx(2.0 / (1.0 + 0.2)));
  CHECK(dirichlet_form(x, spec) == doctest::Approx(spec.rate(1) * 4 + spec.rate(2) * 1 + spec.rate(3) * 0.25));
  // d/dt ||T_t x||^2 at 0 is -2 E(x)
  const double h = 1e-6;
  const double deriv = (l2_norm_squared(apply_heat(x, h, spec)) - l2_norm_squared(apply_heat(x, -0.0, spec))) / h;
  CHECK(deriv == doctest::Approx(-2.0 * dirichlet_form(x, spec)).epsilon(1e-5));
}

TEST_CASE("Ultracontractivity bound") {
  const UltraParams p{0.2, 2.0, 1.0};
  for (double t : {1e-6, 0.1, 1.0, 10.0, 100.0}) {
    const double e = std::exp(-2 * 0.2 * t);
    const double naive = (4 * e * (1 + e) + 4 * e * (1 - e) + (1 - e) * (1 - e)) / std::pow(1 - e, 3);
    CHECK(ultra_bound(t, p) == doctest::Approx(naive).epsilon(t < 1e-3 ? 1e-8 : 1e-12));
  }
  CHECK(ultra_bound(1e3, p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(UltraParams::for_dimension(8, 1.5).alpha == 0.125);
  CHECK(UltraParams::for_dimension(8, 1.5).beta == 3.0);
  CHECK_THROWS_AS(ultra_bound(0.0, p), std::invalid_argument);
}

TEST_CASE("Hypercontractivity series and tau_p") {
  for (int i = 1; i <= 9; ++i) {
    const double y = i / 10.0;
    CHECK(hyper_series(y) == doctest::Approx(oracle::hyper_series_direct(y, 2000)).epsilon(1e-12));
  }
  const HyperTime h = hypercontractivity_time(4.0, 5, 1.0);
  CHECK(h.y == doctest::Approx(0.03367).epsilon(1e-4));
  CHECK(h.tau == doctest::Approx(8.48).epsilon(1e-3));
  CHECK(h.residual < 1e-12);
  CHECK(hyper_series(h.y) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  double prev = 0;
  for (double p : {2.5, 3.0, 4.0, 6.0, 10.0, 100.0}) {
    const HyperTime hp = hypercontractivity_time(p, 7, 1.0);
    CHECK(hp.residual < 1e-12);
    CHECK(hp.tau > prev);
    prev = hp.tau;
  }
  // tau is linear in n
  CHECK(tau_p(4.0, 10) == doctest::Approx(2.0 * tau_p(4.0, 5)).epsilon(1e-14));
  // Larger D means a smaller target, hence a longer time.
  CHECK(tau_p(4.0, 5, 2.0) > tau_p(4.0, 5, 1.0));
  CHECK_THROWS_AS(tau_p(2.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(tau_p(4.0, 5, 0.0), std::invalid_argument);
}

TEST_CASE("2 -> p constant") {
  const double d = two_to_p_exponent();
  // 3^d is the larger root of t^2 - 11t + 4, evaluated in extended precision.
  const HighFloat root = (HighFloat(11) + sqrt(HighFloat(105))) / 2;
  CHECK(d == doctest::Approx((log(root) / log(HighFloat(3))).convert_to<double>()).epsilon(1e-15));
  CHECK(d == doctest::Approx(2.1509555605).epsilon(1e-10));
  CHECK(std::abs(r4(d) - 1.0) < 1e-10);
  const double q = std::pow(3.0, d);
  CHECK(q * q - 11 * q + 4 == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(two_to_p_time(4.0, 5) == doctest::Approx(0.5 * d * 5 * std::log(3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(two_to_p_time(3.9, 5), std::invalid_argument);
}

TEST_CASE("Reports") {
  const InequalityReport r = make_report("x", 1.0, 1.0 - 1e-13, 0.0, 1e-12);
  CHECK(r.pass);
  CHECK(r.margin == doctest::Approx(-1e-13));
  CHECK(!make_report("x", 1.0, 0.5, 0.1, 0.1).pass);
}

TEST_CASE("Hypercontractivity at tau_p on random elements") {
  Prng rng(2024);
  for (int n : {5, 6}) {
    const SemigroupSpec spec(n);
    for (double p : {3.0, 4.0}) {
      const double t = tau_p(p, n);
      for (int i = 0; i < 8; ++i) {
        const CE x = random_element(n, 1 + i, rng);
        const auto r = hyper_margin(x, t, p, spec);
        CHECK(r.pass);
        CHECK(r.lhs <= r.rhs * (1 + 1e-6));
      }
    }
  }
  // Before the threshold the inequality can fail: chi_1 at t = 0.
  const SemigroupSpec spec(5);
  CHECK(!hyper_margin(CE::character(5, 1), 0.0, 4.0, spec).pass);
}

TEST_CASE("Ultracontractivity on random elements") {
  Prng rng(77);
  const SemigroupSpec spec(5);
  const auto params = UltraParams::for_dimension(5);
  for (int i = 0; i < 10; ++i) {
    const CE x = random_element(5, 2 * i, rng);
    for (double t : {0.1, 1.0, 10.0}) CHECK(ultra_margin(x, t, spec, params).pass);
  }
}

TEST_CASE("Spectral gap") {
  Prng rng(8);
  for (int n = 5; n <= 10; ++n) {
    const SemigroupSpec spec(n);
    for (int i = 0; i < 50; ++i) {
      const auto r = spectral_gap_defect(random_element(n, i % 12, rng), spec);
      CHECK(r.pass);
      CHECK(r.margin >= -1e-12);
    }
    // Equality on chi_1 up to the rate gap 1/(n-1) - 1/n.
    const auto r1 = spectral_gap_defect(CE::character(n, 1), spec);
    CHECK(r1.margin == doctest::Approx(1.0 / (n - 1) - 1.0 / n).epsilon(1e-13));
  }
}

TEST_CASE("Log-Sobolev: second-order behaviour") {
  const SemigroupSpec spec(5);
  const double eps = 1e-3;
  const CE x = CE::unit(5) + CE::character(5, 1, eps);
  for (double c : {1.0, 2.0, 4.0, 16.0}) {
    const auto r = log_sobolev_defect(x, c, spec);
    const double defect = r.lhs - r.rhs;
    const double target = 1.0 - c / (2.0 * 4.0);
    CHECK(defect / (eps * eps) == doctest::Approx(target).epsilon(5e-3));
  }
  // Lhs with the third-order term: eps^2 + eps^3 / 3
  const auto r = log_sobolev_defect(x, 1.0, spec);
  CHECK(r.lhs == doctest::Approx(eps * eps + eps * eps * eps / 3).epsilon(1e-5));
  CHECK(r.quadrature_error < 1e-13);
  CHECK_THROWS_AS(log_sobolev_defect(CE::character(5, 1), 1.0, spec), std::invalid_argument);
  CHECK_THROWS_AS(log_sobolev_defect(x, 0.0, spec), std::invalid_argument);
}

TEST_CASE("Log-Sobolev on positive random elements at the heuristic constant") {
  Prng rng(4);
  const SemigroupSpec spec(5);
  const double c = lsi_c_from_hyper(5);
  for (int i = 0; i < 10; ++i) {
    const CE x = random_positive_element(5, 4, rng, 0.2);
    CHECK(log_sobolev_defect(x, c, spec).pass);
  }
}

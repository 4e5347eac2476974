#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "qheat/quadrature.hpp"

using namespace qheat;

TEST_CASE("Gauss-Legendre rules are exact to degree 2m-1") {
  for (int m : {1, 2, 3, 6, 15, 20, 40}) {
    const auto& rule = GaussLegendreRule::of_order(m);
    CHECK(rule.order() == m);
    CHECK(rule.weights().sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int d = 0; d <= 2 * m - 1; ++d) {
      const double got = rule.integrate([d](double x) { return std::pow(x, d); }, 0.0, 1.0);
      CHECK(got == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
  }
  // Nodes symmetric about 0
  const auto& r = GaussLegendreRule::of_order(7);
  for (int i = 0; i < 7; ++i) CHECK(r.nodes()[i] == doctest::Approx(-r.nodes()[6 - i]).epsilon(1e-15));
}

TEST_CASE("Adaptive integration") {
  const auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, oracle::kPi, 1e-13);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.error_estimate <= 1e-13);

  // |x - 1/3| has a kink; a breakpoint makes it easy.
  auto kink = [](double x) { return std::abs(x - 1.0 / 3.0); };
  const double exact = (1.0 / 9.0 + 4.0 / 9.0) / 2.0;
  CHECK(integrate_adaptive(kink, {0.0, 1.0 / 3.0, 1.0}, 1e-14).value == doctest::Approx(exact).epsilon(1e-14));
  CHECK(integrate_adaptive(kink, 0.0, 1.0, 1e-10).value == doctest::Approx(exact).epsilon(1e-10));

  // Against Simpson on a smooth integrand
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
  CHECK(integrate_adaptive(f, -1.0, 2.0, 1e-13).value ==
        doctest::Approx(oracle::simpson(f, -1.0, 2.0, 20000)).epsilon(1e-11));
}

TEST_CASE("Adaptive integration reports failure with the best estimate") {
  AdaptiveOptions opts;
  opts.order = 3;
  opts.max_subdivisions = 5;
  try {
    integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-15, opts);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best().value == doctest::Approx(2.0 / 3.0).epsilon(1e-2));
    CHECK(e.best().error_estimate > 1e-15);
  }
}

TEST_CASE("Weyl integral: probability measure, orthonormal characters") {
  CHECK(weyl_integral([](double) { return 1.0; }, 1e-14).value == doctest::Approx(1.0).epsilon(1e-14));
  auto unit = [](int k) {
    std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
    v.back() = 1.0;
    return v;
  };
  for (int j = 0; j <= 6; ++j) {
    for (int k = 0; k <= 6; ++k) {
      const auto a = unit(j), b = unit(k);
      auto f = [&](double t) { return oracle::class_fn(a, t) * oracle::class_fn(b, t); };
      CHECK(weyl_integral(f, 1e-13).value == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("Panel orders follow smoothness") {
  CHECK(panel_order(Smoothness::analytic) > panel_order(Smoothness::smooth));
  CHECK(panel_order(Smoothness::smooth) > panel_order(Smoothness::piecewise));
  CHECK(panel_order(Smoothness::piecewise) > panel_order(Smoothness::rough));
}

TEST_CASE("Measure parsing and integration") {
  const MeasureSpec m = MeasureSpec::parse("atoms=0.5:2,3:0.25;density=none");
  REQUIRE(m.atoms().size() == 2);
  CHECK(m.atoms()[1].location == 3.0);
  CHECK(!m.density());
  CHECK(integrate_measure([](double x) { return x * x; }, m, 5.0, 1e-13) == doctest::Approx(2 * 0.25 + 0.25 * 9));
  CHECK(MeasureSpec::parse("atoms=;density=none").is_zero());
  CHECK_THROWS_AS(MeasureSpec::parse("atoms=1"), std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpec::parse("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpec::atom(5.0, 1.0).validate(5.0), std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpec::atom(1.0, -1.0).validate(5.0), std::invalid_argument);

  // Piecewise-linear hat on [0, 2] with peak 1 at x = 1: mass 1, first moment 1.
  const Density hat = MeasureSpec::table_density({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  MeasureSpec h;
  h.set_density(hat);
  CHECK(integrate_measure([](double) { return 1.0; }, h, 5.0, 1e-13) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_measure([](double x) { return x; }, h, 5.0, 1e-13) == doctest::Approx(1.0).epsilon(1e-12));

  const MeasureSpec sum = h + MeasureSpec::atom(1.0, 3.0);
  CHECK(integrate_measure([](double) { return 1.0; }, sum, 5.0, 1e-13) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("Density tables from CSV") {
  const auto path = std::filesystem::temp_directory_path() / "qheat_density_test.csv";
  {
    std::ofstream out(path);
    out << "x,density\n0,0\n1,2\n4,2\n";
  }
  MeasureSpec m = MeasureSpec::parse("atoms=;density=table:" + path.string());
  REQUIRE(m.density());
  // area: triangle 1 + rectangle 6
  CHECK(integrate_measure([](double) { return 1.0; }, m, 5.0, 1e-13) == doctest::Approx(7.0).epsilon(1e-12));
  {
    std::ofstream out(path);
    out << "x,density\n0,0\nnot,a number\n";
  }
  CHECK_THROWS_AS(MeasureSpec::read_table(path.string()), std::invalid_argument);
  std::filesystem::remove(path);
}

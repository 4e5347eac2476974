#include <doctest.h>

#include "qheat/cstar_model.hpp"

using namespace qheat;
using cd = std::complex<double>;

TEST_CASE("Shapes") {
  CHECK(dim_b(AlgebraShape::parse("2,1")) == 5);
  CHECK(dim_b(AlgebraShape::commutative(6)) == 6);
  CHECK(AlgebraShape::parse(" 3 , 2 ").blocks() == std::vector<int>{3, 2});
  CHECK(AlgebraShape::parse("2,1").to_string() == "2,1");
  CHECK_THROWS_AS(AlgebraShape::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraShape::parse("2,x"), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraShape::parse("0"), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraShape(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("Plancherel trace is a tracial state") {
  const AlgebraShape shape({2, 1, 3});
  CHECK(std::abs(plancherel_trace(shape, block_identity(shape)) - cd(1.0)) < 1e-15);

  BlockElement<cd> a, b;
  for (int n : shape.blocks()) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(n, n), y = Eigen::MatrixXcd::Random(n, n);
    a.push_back(x);
    b.push_back(y);
  }
  CHECK(std::abs(plancherel_trace(shape, block_product(a, b)) - plancherel_trace(shape, block_product(b, a))) < 1e-13);
  // positivity: psi(a* a) > 0
  const cd pos = plancherel_trace(shape, block_product(block_adjoint(a), a));
  CHECK(pos.real() > 0);
  CHECK(std::abs(pos.imag()) < 1e-14);

  BlockElement<cd> wrong{Eigen::MatrixXcd::Identity(2, 2)};
  CHECK_THROWS_AS(plancherel_trace(shape, wrong), std::invalid_argument);
}

TEST_CASE("Multiplication matrix") {
  const AlgebraShape shape({2, 1});
  const Eigen::MatrixXd m = multiplication_matrix(shape);
  CHECK(m.rows() == 5);
  CHECK(m.cols() == 25);
  // Commutative case: m m* = n id exactly with the uniform trace.
  for (int n = 1; n <= 6; ++n) {
    const Eigen::MatrixXd mc = multiplication_matrix(AlgebraShape::commutative(n));
    CHECK((mc * mc.transpose() - n * Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12);
  }
}

TEST_CASE("delta-form defect") {
  for (int n = 1; n <= 6; ++n) CHECK(delta_form_defect(AlgebraShape::commutative(n)) < 1e-12);
  CHECK(delta_form_defect(AlgebraShape({2})) < 1e-12);
  CHECK(delta_form_defect(AlgebraShape({2, 1})) < 1e-12);
  CHECK(delta_form_defect(AlgebraShape({3, 2, 1, 1})) < 1e-12);
}

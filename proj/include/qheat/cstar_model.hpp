#pragma once

// Finite-dimensional C*-algebras B = M_{n_1} (+) ... (+) M_{n_m} with the
// Plancherel trace psi(A) = sum_r (n_r / dim B) Tr(A_r).

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qheat {

class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<int> blocks);

  /// Parses a comma-separated block list, e.g. "2,1".
  static AlgebraShape parse(std::string_view text);
  /// C^n, n one-dimensional blocks.
  static AlgebraShape commutative(int n) { return AlgebraShape(std::vector<int>(static_cast<std::size_t>(n), 1)); }

  const std::vector<int>& blocks() const { return blocks_; }
  std::string to_string() const;

 private:
  std::vector<int> blocks_;
};

/// sum_r n_r^2
int dim_b(const AlgebraShape& shape);

template <class Scalar = std::complex<double>>
using BlockElement = std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>;

template <class Scalar>
void check_shape(const AlgebraShape& shape, const BlockElement<Scalar>& a) {
  const auto& blocks = shape.blocks();
  if (a.size() != blocks.size()) throw std::invalid_argument("BlockElement: block count does not match shape");
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    if (a[r].rows() != blocks[r] || a[r].cols() != blocks[r])
      throw std::invalid_argument("BlockElement: block " + std::to_string(r) + " has the wrong size");
  }
}

template <class Scalar>
Scalar plancherel_trace(const AlgebraShape& shape, const BlockElement<Scalar>& a) {
  check_shape(shape, a);
  const double dim = dim_b(shape);
  Scalar total(0);
  for (std::size_t r = 0; r < a.size(); ++r) total += Scalar(shape.blocks()[r] / dim) * a[r].trace();
  return total;
}

template <class Scalar>
BlockElement<Scalar> block_product(const BlockElement<Scalar>& a, const BlockElement<Scalar>& b) {
  BlockElement<Scalar> out;
  out.reserve(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) out.push_back(a[r] * b[r]);
  return out;
}

template <class Scalar>
BlockElement<Scalar> block_adjoint(const BlockElement<Scalar>& a) {
  BlockElement<Scalar> out;
  out.reserve(a.size());
  for (const auto& m : a) out.push_back(m.adjoint());
  return out;
}

template <class Scalar = std::complex<double>>
BlockElement<Scalar> block_identity(const AlgebraShape& shape) {
  BlockElement<Scalar> out;
  for (int n : shape.blocks()) out.push_back(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n));
  return out;
}

/// Matrix of the multiplication map m: B (x) B -> B in the psi-orthonormal
/// basis f = sqrt(dim B / n_r) e^{(r)}_{ij}; shape dim x dim^2. Its adjoint
/// with respect to <a,b> = psi(a* b) is the conjugate transpose.
Eigen::MatrixXd multiplication_matrix(const AlgebraShape& shape);

/// || m m* - (dim B) id ||, operator norm. Zero for a delta-form with delta^2 = dim B.
double delta_form_defect(const AlgebraShape& shape);

}  // namespace qheat

#include "qheat/cstar_model.hpp"

#include <cmath>
#include <sstream>

namespace qheat {

AlgebraShape::AlgebraShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("AlgebraShape: no blocks");
  for (int n : blocks_)
    if (n < 1) throw std::invalid_argument("AlgebraShape: block sizes must be positive");
}

AlgebraShape AlgebraShape::parse(std::string_view text) {
  std::vector<int> blocks;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("AlgebraShape: cannot parse block size '" + token + "'");
    }
    if (token.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("AlgebraShape: cannot parse block size '" + token + "'");
    blocks.push_back(v);
  }
  return AlgebraShape(std::move(blocks));
}

std::string AlgebraShape::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(blocks_[i]);
  }
  return out;
}

int dim_b(const AlgebraShape& shape) {
  int dim = 0;
  for (int n : shape.blocks()) dim += n * n;
  return dim;
}

Eigen::MatrixXd multiplication_matrix(const AlgebraShape& shape) {
  const int dim = dim_b(shape);
  // Basis index -> (block, row, col), blocks laid out consecutively.
  struct Unit {
    int block, row, col;
  };
  std::vector<Unit> units;
  std::vector<int> offset;
  for (int r = 0; r < static_cast<int>(shape.blocks().size()); ++r) {
    offset.push_back(static_cast<int>(units.size()));
    const int n = shape.blocks()[static_cast<std::size_t>(r)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) units.push_back({r, i, j});
  }

  // f_a f_b = sqrt(dim/n_r) * delta_{jk} f_{(r,i,l)} for f_a = (r,i,j), f_b = (r,k,l).
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(dim) * dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const Unit& u = units[static_cast<std::size_t>(a)];
      const Unit& v = units[static_cast<std::size_t>(b)];
      if (u.block != v.block || u.col != v.row) continue;
      const int n = shape.blocks()[static_cast<std::size_t>(u.block)];
      const int target = offset[static_cast<std::size_t>(u.block)] + u.row * n + v.col;
      m(target, static_cast<Eigen::Index>(a) * dim + b) = std::sqrt(static_cast<double>(dim) / n);
    }
  }
  return m;
}

double delta_form_defect(const AlgebraShape& shape) {
  const Eigen::MatrixXd m = multiplication_matrix(shape);
  const Eigen::MatrixXd gram = m * m.transpose();
  const Eigen::MatrixXd diff = gram - static_cast<double>(dim_b(shape)) * Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace qheat

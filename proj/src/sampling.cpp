#include "qheat/sampling.hpp"

namespace qheat {

CentralElement<double> random_element(int n, int kmax, Prng& rng) {
  if (kmax < 0) throw std::invalid_argument("random_element: kmax must be >= 0");
  Eigen::VectorXd c(kmax + 1);
  for (int k = 0; k <= kmax; ++k) c[k] = rng.uniform(-1.0, 1.0);
  return CentralElement<double>(n, std::move(c));
}

CentralElement<double> random_positive_element(int n, int kmax, Prng& rng, double floor) {
  CentralElement<double> x = random_element(n, kmax, rng);
  const double shift = floor - min_reduced(x);
  return x + CentralElement<double>::character(n, 0, shift);
}

}  // namespace qheat

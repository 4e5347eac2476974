#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qheat/central_algebra.hpp"

namespace qheat {

/// Seeded generator for reproducible property runs. Uniform variates are
/// built from the raw 64-bit stream (top 53 bits), not std::uniform_real_distribution,
/// so the sequence is identical across standard libraries.
class Prng {
 public:
  static constexpr std::string_view kName = "mt19937_64/u53-v1";

  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Coefficients i.i.d. uniform on [-1, 1] for levels 0..kmax.
CentralElement<double> random_element(int n, int kmax, Prng& rng);

/// A random element shifted by a multiple of chi_0 so that its class function
/// has minimum `floor` > 0.
CentralElement<double> random_positive_element(int n, int kmax, Prng& rng, double floor = 0.1);

}  // namespace qheat

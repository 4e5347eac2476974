#include "qheat/polynomial.hpp"

#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>

namespace qheat {
namespace {

class ChebyshevCache {
 public:
  static ChebyshevCache& instance() {
    static ChebyshevCache cache;
    return cache;
  }

  IntPolynomial s(int k) {
    std::lock_guard lock(mu_);
    return s_locked(k);
  }

  IntPolynomial pi(int k) {
    std::lock_guard lock(mu_);
    if (k > limit_) return even_part_in_square(s_locked(2 * k));
    while (static_cast<int>(pi_.size()) <= k)
      pi_.push_back(even_part_in_square(s_locked(2 * static_cast<int>(pi_.size()))));
    return pi_[static_cast<std::size_t>(k)];
  }

  IntPolynomial pi_derivative(int k) {
    std::lock_guard lock(mu_);
    if (k > limit_) return derivative(even_part_in_square(s_locked(2 * k)));
    auto it = dpi_.find(k);
    if (it == dpi_.end()) it = dpi_.emplace(k, derivative(even_part_in_square(s_locked(2 * k)))).first;
    return it->second;
  }

  void set_limit(int k_max) {
    std::lock_guard lock(mu_);
    limit_ = std::max(k_max, 1);
  }
  int limit() {
    std::lock_guard lock(mu_);
    return limit_;
  }

 private:
  ChebyshevCache() {
    s_.push_back(IntPolynomial{BigInt(1)});
    s_.push_back(IntPolynomial{BigInt(0), BigInt(1)});
  }

  // Pi_k needs S_{2k}, so S is memoized to twice the Pi limit.
  IntPolynomial s_locked(int k) {
    const int cap = std::max(2 * limit_, 1);
    while (static_cast<int>(s_.size()) <= std::min(k, cap)) {
      const std::size_t m = s_.size();
      s_.push_back(s_[m - 1].shifted() - s_[m - 2]);
    }
    if (k < static_cast<int>(s_.size())) return s_[static_cast<std::size_t>(k)];
    IntPolynomial prev = s_[s_.size() - 2];
    IntPolynomial cur = s_.back();
    for (int j = static_cast<int>(s_.size()) - 1; j < k; ++j) {
      IntPolynomial next = cur.shifted() - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }

  std::mutex mu_;
  int limit_ = 256;
  std::deque<IntPolynomial> s_;
  std::deque<IntPolynomial> pi_;
  std::map<int, IntPolynomial> dpi_;
};

}  // namespace

IntPolynomial even_part_in_square(const IntPolynomial& p) {
  std::vector<BigInt> out;
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i % 2 == 1) {
      if (c[i] != 0) throw std::invalid_argument("even_part_in_square: polynomial is not even");
      continue;
    }
    out.push_back(c[i]);
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial cheb_s(int k) {
  if (k < 0) throw std::invalid_argument("cheb_s: negative index");
  return ChebyshevCache::instance().s(k);
}

IntPolynomial pi_poly(int k) {
  if (k < 0) throw std::invalid_argument("pi_poly: negative index");
  return ChebyshevCache::instance().pi(k);
}

IntPolynomial pi_poly_derivative(int k) {
  if (k < 0) throw std::invalid_argument("pi_poly_derivative: negative index");
  return ChebyshevCache::instance().pi_derivative(k);
}

void set_chebyshev_cache_limit(int k_max) { ChebyshevCache::instance().set_limit(k_max); }
int chebyshev_cache_limit() { return ChebyshevCache::instance().limit(); }

std::vector<int> fusion_range(int k, int s) {
  if (k < 0 || s < 0) throw std::invalid_argument("fusion_range: negative level");
  std::vector<int> out;
  for (int j = std::abs(k - s); j <= k + s; ++j) out.push_back(j);
  return out;
}

}  // namespace qheat

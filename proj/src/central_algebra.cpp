#include "qheat/central_algebra.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace qheat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGridPoints = 4096;

std::vector<double> parse_numbers(std::string_view text, const char* what) {
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(token, &used));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": cannot parse '" + token + "'");
    }
    if (token.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument(std::string(what) + ": cannot parse '" + token + "'");
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty coefficient list");
  return out;
}

CentralElement<double> from_vector(int n, const std::vector<double>& v) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) c[static_cast<Eigen::Index>(i)] = v[i];
  return CentralElement<double>(n, std::move(c));
}

int brent_bits(double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  return std::clamp(static_cast<int>(std::ceil(-std::log2(tol))), 10, 52);
}

// max |f| over the sampled nodes, each sampled local maximum polished by
// Brent's method on the neighbouring bracket.
template <class F>
double refine_max_abs(F&& f, const std::vector<double>& nodes, int bits) {
  std::vector<double> vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = std::abs(f(nodes[i]));
  double best = *std::max_element(vals.begin(), vals.end());
  auto neg_abs = [&f](double t) { return -std::abs(f(t)); };
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] && vals[i] > 0) {
      const auto r = boost::math::tools::brent_find_minima(neg_abs, nodes[i - 1], nodes[i + 1], bits);
      best = std::max(best, -r.second);
    }
  }
  return best;
}

std::vector<double> theta_grid() {
  std::vector<double> g(kGridPoints + 1);
  for (int i = 0; i <= kGridPoints; ++i) g[static_cast<std::size_t>(i)] = kPi * i / kGridPoints;
  return g;
}

}  // namespace

CentralElement<double> parse_element(int n, std::string_view text) { return from_vector(n, parse_numbers(text, "element")); }

CentralElement<double> read_element(int n, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("element: cannot open " + path);
  std::vector<double> v;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const bool header = first;
    first = false;
    if (line.empty() || line[0] == '#') continue;
    try {
      v.push_back(std::stod(line));
    } catch (const std::exception&) {
      if (header) continue;
      throw std::invalid_argument("element: bad coefficient '" + line + "' in " + path);
    }
  }
  if (v.empty()) throw std::invalid_argument("element: no coefficients in " + path);
  return from_vector(n, v);
}

double so3_character(int k, double theta) {
  if (std::abs(theta) < 1e-6) return 2.0 * k + 1.0;
  return std::sin((2.0 * k + 1.0) * 0.5 * theta) / std::sin(0.5 * theta);
}

double class_function(const CentralElement<double>& x, double theta) {
  const auto& c = x.coeffs();
  if (c.size() == 0) return 0.0;
  const double two_cos = 2.0 * std::cos(theta);
  double prev = 1.0, cur = 1.0 + two_cos;
  double acc = c[0];
  if (c.size() > 1) acc += c[1] * cur;
  for (Eigen::Index k = 2; k < c.size(); ++k) {
    const double next = two_cos * cur - prev;
    prev = cur;
    cur = next;
    acc += c[k] * cur;
  }
  return acc;
}

double universal_function(const CentralElement<double>& x, double t) {
  const auto& c = x.coeffs();
  if (c.size() == 0) return 0.0;
  const double shift = t - 2.0;
  double prev = 1.0, cur = t - 1.0;
  double acc = c[0];
  if (c.size() > 1) acc += c[1] * cur;
  for (Eigen::Index k = 2; k < c.size(); ++k) {
    const double next = shift * cur - prev;
    prev = cur;
    cur = next;
    acc += c[k] * cur;
  }
  return acc;
}

NormEstimate lp_norm(const CentralElement<double>& x, double p, double tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm: p must be in [1, inf)");
  if (x.is_zero()) return {};
  auto g = [&x](double theta) { return class_function(x, theta); };

  // Sign changes of g become breakpoints, so |g|^p is smooth on every panel.
  const int samples = 512;
  std::vector<double> cuts{0.0};
  double prev_t = 0.0, prev_v = g(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double t = kPi * i / samples;
    const double v = g(t);
    if ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0)) {
      boost::uintmax_t iters = 100;
      const auto r = boost::math::tools::toms748_solve(g, prev_t, t, prev_v, v,
                                                       boost::math::tools::eps_tolerance<double>(50), iters);
      const double root = 0.5 * (r.first + r.second);
      if (root > cuts.back() && root < kPi) cuts.push_back(root);
    }
    prev_t = t;
    prev_v = v;
  }
  cuts.push_back(kPi);

  auto integrand = [&g, p](double theta) {
    const double s = std::sin(0.5 * theta);
    return (2.0 / kPi) * std::pow(std::abs(g(theta)), p) * s * s;
  };
  // Coarse pass fixes the absolute scale for the relative tolerance.
  const GaussLegendreRule& rule = GaussLegendreRule::of_order(30);
  double scale = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) scale += rule.integrate(integrand, cuts[i - 1], cuts[i]);
  scale = std::max(scale, std::numeric_limits<double>::min());

  AdaptiveOptions opts;
  opts.order = 20;
  const QuadratureResult r = integrate_adaptive(integrand, cuts, tol * scale, opts);
  const double value = std::pow(std::max(r.value, 0.0), 1.0 / p);
  // d(I^{1/p}) = (1/p) I^{1/p - 1} dI
  const double error = r.value > 0 ? value / (p * r.value) * r.error_estimate : r.error_estimate;
  return {value, error};
}

double sup_norm_reduced(const CentralElement<double>& x, double tol) {
  if (x.is_zero()) return 0.0;
  return refine_max_abs([&x](double theta) { return class_function(x, theta); }, theta_grid(), brent_bits(tol));
}

double sup_norm_universal(const CentralElement<double>& x, double tol) {
  if (x.is_zero()) return 0.0;
  const double n = x.n();
  const int m = std::max(1024, 32 * (x.top_level() + 1));
  // Chebyshev-Lobatto nodes on [0, n], ascending, endpoints included.
  std::vector<double> nodes(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) nodes[static_cast<std::size_t>(i)] = 0.5 * n * (1.0 - std::cos(kPi * i / m));
  return refine_max_abs([&x](double t) { return universal_function(x, t); }, nodes, brent_bits(tol));
}

double min_reduced(const CentralElement<double>& x, double tol) {
  if (x.is_zero()) return 0.0;
  auto g = [&x](double theta) { return class_function(x, theta); };
  const int bits = brent_bits(tol);
  const auto nodes = theta_grid();
  std::vector<double> vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = g(nodes[i]);
  double best = *std::min_element(vals.begin(), vals.end());
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1]) {
      const auto r = boost::math::tools::brent_find_minima(g, nodes[i - 1], nodes[i + 1], bits);
      best = std::min(best, r.second);
    }
  }
  return best;
}

bool is_positive_reduced(const CentralElement<double>& x, double tol) { return min_reduced(x) >= -tol; }

}  // namespace qheat

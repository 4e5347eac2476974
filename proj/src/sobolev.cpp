#include "qheat/sobolev.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "qheat/polynomial.hpp"
#include "qheat/spectrum.hpp"
#include "qheat/parallel.hpp"

namespace qheat {
namespace {

void require_p(double p, const char* what) {
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument(std::string(what) + ": p must be in (1, 2]");
}

// Exact-rate prefix per n; levels past it use the hyperbolic closed form.
const std::vector<double>& rate_prefix(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<double>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const Eigen::VectorXd c = heat_rates(n, chebyshev_cache_limit());
    it = cache.emplace(n, std::vector<double>(c.data(), c.data() + c.size())).first;
  }
  return it->second;
}

double tail_bound(int n, double s, double t, long K) {
  return std::pow(t, s) * std::exp(-2.0 * t) * weighted_geometric_tail(K, std::exp(-2.0 * t / n));
}

}  // namespace

double hls_lhs(const CentralElement<double>& x, double s, double p) {
  require_p(p, "hls_lhs");
  const double e = -s * (2.0 / p - 1.0);
  double acc = 0.0;
  for (int k = 0; k <= x.top_level(); ++k) acc += std::pow(1.0 + k, e) * x.coeff(k) * x.coeff(k);
  return std::sqrt(acc);
}

double hy_lhs(const CentralElement<double>& x, double s, double p) {
  require_p(p, "hy_lhs");
  const double q = p / (p - 1.0);
  double acc = 0.0;
  for (int k = 0; k <= x.top_level(); ++k) acc += std::pow(1.0 + k, -s) * std::pow(std::abs(x.coeff(k)), q);
  return std::pow(acc, 1.0 / q);
}

double weighted_geometric_tail(long K, double q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("weighted_geometric_tail: q must be in (0, 1)");
  // sum_{j>=0} (K+2+j)^2 q^j, scaled by q^{K+1}
  const double m = static_cast<double>(K) + 2.0;
  const double r = 1.0 - q;
  const double body = m * m / r + 2.0 * m * q / (r * r) + q * (1.0 + q) / (r * r * r);
  return std::pow(q, static_cast<double>(K) + 1.0) * body;
}

double g_criterion_truncated(int n, double s, double t, long K) {
  if (n < 5) throw std::invalid_argument("g_criterion: n must be >= 5");
  if (!(t > 0)) throw std::invalid_argument("g_criterion: t must be > 0");
  if (K < 0) throw std::invalid_argument("g_criterion: K must be >= 0");
  const auto& prefix = rate_prefix(n);
  double acc = 0.0;
  for (long k = 0; k <= K; ++k) {
    const double c = k < static_cast<long>(prefix.size()) ? prefix[static_cast<std::size_t>(k)]
                                                          : heat_rate_closed_form(n, static_cast<int>(k));
    const double w = 1.0 + static_cast<double>(k);
    acc += w * w * std::exp(-2.0 * t * (1.0 + c));
  }
  return std::pow(t, s) * acc;
}

CriterionValue g_criterion(int n, double s, double t, double tail_tol) {
  if (n < 5) throw std::invalid_argument("g_criterion: n must be >= 5");
  if (!(t > 0)) throw std::invalid_argument("g_criterion: t must be > 0");
  if (!(tail_tol > 0)) throw std::invalid_argument("g_criterion: tail_tol must be positive");
  constexpr long kMaxK = 1L << 30;
  long hi = 16;
  while (tail_bound(n, s, t, hi) >= tail_tol) {
    hi *= 2;
    if (hi > kMaxK) throw std::runtime_error("g_criterion: truncation does not converge");
  }
  long lo = hi / 2;
  if (tail_bound(n, s, t, lo) < tail_tol) lo = -1;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (tail_bound(n, s, t, mid) < tail_tol ? hi : lo) = mid;
  }
  return {g_criterion_truncated(n, s, t, hi), hi, tail_bound(n, s, t, hi)};
}

Family Family::parse(std::string_view text) {
  Family f;
  if (text == "heat") {
    f.kind = Kind::heat_kernel;
    return f;
  }
  if (text == "poly") return f;
  const std::string_view prefix = "poly:a=";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string num(text.substr(prefix.size()));
    std::size_t used = 0;
    try {
      f.a = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == num.size() && used > 0 && f.a > 0) return f;
  }
  throw std::invalid_argument("family: expected poly:a=<positive> or heat, got '" + std::string(text) + "'");
}

std::string Family::to_string() const {
  if (kind == Kind::heat_kernel) return "heat";
  std::ostringstream out;
  out << "poly:a=" << a;
  return out.str();
}

CentralElement<double> poly_decay_member(int n, double a, int N) {
  if (N < 1) throw std::invalid_argument("poly family: N must be >= 1");
  Eigen::VectorXd c(N);
  for (int k = 0; k < N; ++k) c[k] = std::pow(1.0 + k, -a);
  return CentralElement<double>(n, std::move(c));
}

double heat_kernel_threshold(int n) {
  if (n < 5) throw std::invalid_argument("heat family: n must be >= 5");
  const double phi = std::acosh(0.5 * std::sqrt(static_cast<double>(n)));
  return 2.0 * phi * std::sqrt(static_cast<double>(n) * (n - 4));
}

CentralElement<double> heat_kernel_member(int n, double t, double tol, int max_level) {
  const double threshold = heat_kernel_threshold(n);
  if (!(t > threshold)) {
    std::ostringstream msg;
    msg << "heat family: t = " << t << " is at or below the summability threshold " << threshold << " for n = " << n;
    throw std::invalid_argument(msg.str());
  }
  const double phi = std::acosh(0.5 * std::sqrt(static_cast<double>(n)));
  const double sigma = 1.0 / (2.0 * std::sqrt(static_cast<double>(n) * (n - 4)));
  // c_j >= (2j+1 - coth phi) sigma and n_j <= e^{(2j+1) phi} / (2 sinh phi), so the
  // j-th term is at most C rho^j.
  const double log_rho = 2.0 * (phi - sigma * t);
  const double rho = std::exp(log_rho);
  const double log_c = (phi - sigma * t) + sigma * t / std::tanh(phi) - std::log(2.0 * std::sinh(phi));
  int N = 0;
  while (std::exp(log_c + (N + 1) * log_rho) / (1.0 - rho) >= tol) {
    if (++N > max_level) throw std::runtime_error("heat family: truncation needs more than max_level levels");
  }
  Eigen::VectorXd c(N + 1);
  for (int k = 0; k <= N; ++k) {
    const double log_nk = std::log(dimension(n, k).convert_to<double>());
    c[k] = std::exp(log_nk - heat_rate_exact(n, k).convert_to<double>() * t);
  }
  return CentralElement<double>(n, std::move(c));
}

void SharpnessScanConfig::validate() const {
  if (n < 5) throw std::invalid_argument("sharpness: n must be >= 5");
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("sharpness: p must be in (1, 2]");
  if (!std::isfinite(s)) throw std::invalid_argument("sharpness: s must be finite");
  if (grid.empty()) throw std::invalid_argument("sharpness: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0) || !std::isfinite(grid[i])) throw std::invalid_argument("sharpness: grid values must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("sharpness: grid must be strictly increasing");
    if (family.kind == Family::Kind::poly_decay && grid[i] != std::floor(grid[i]))
      throw std::invalid_argument("sharpness: poly family grid values are truncation sizes N (integers)");
  }
  if (family.kind == Family::Kind::poly_decay && grid.back() > max_level + 1)
    throw std::invalid_argument("sharpness: N exceeds the quadrature level limit");
  if (!(tol > 0)) throw std::invalid_argument("sharpness: tol must be positive");
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
  const std::size_t m = x.size();
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  return denom == 0 ? std::numeric_limits<double>::quiet_NaN() : (m * sxy - sx * sy) / denom;
}

namespace {

double fit_rows(const std::vector<ScanRow>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (!r.flag.empty() || !(r.ratio > 0)) continue;
    x.push_back(r.grid);
    y.push_back(r.ratio);
  }
  return loglog_slope(x, y);
}

ScanRow scan_row(const SharpnessScanConfig& cfg, double g) {
  ScanRow row;
  row.grid = g;
  try {
    const CentralElement<double> f = cfg.family.kind == Family::Kind::poly_decay
                                         ? poly_decay_member(cfg.n, cfg.family.a, static_cast<int>(g))
                                         : heat_kernel_member(cfg.n, g, cfg.tol, cfg.max_level);
    row.lhs = cfg.kind == ScanKind::hls ? hls_lhs(f, cfg.s, cfg.p) : hy_lhs(f, cfg.s, cfg.p);
    row.rhs = lp_norm(f, cfg.p).value;
    row.ratio = row.lhs / row.rhs;
  } catch (const std::exception& e) {
    row.lhs = row.rhs = row.ratio = std::numeric_limits<double>::quiet_NaN();
    row.flag = e.what();
  }
  return row;
}

}  // namespace

ScanTable sharpness_scan(const SharpnessScanConfig& cfg) {
  cfg.validate();
  ScanTable table;
  table.rows = detail::parallel_map<ScanRow>(cfg.grid.size(), [&cfg](std::size_t i) { return scan_row(cfg, cfg.grid[i]); });
  table.growth_exponent = fit_rows(table.rows);
  return table;
}

ScanTable criterion_scan(int n, double s, const std::vector<double>& t_grid, double tail_tol) {
  if (t_grid.empty()) throw std::invalid_argument("criterion: empty grid");
  ScanTable table;
  table.rows = detail::parallel_map<ScanRow>(t_grid.size(), [&](std::size_t i) {
      const double t = t_grid[i];
      ScanRow row;
      row.grid = t;
      try {
        const CriterionValue v = g_criterion(n, s, t, tail_tol);
        row.lhs = v.value;
        row.rhs = g_criterion_truncated(n, s, t, 2 * v.K);
        row.ratio = row.lhs / row.rhs;
      } catch (const std::exception& e) {
        row.lhs = row.rhs = row.ratio = std::numeric_limits<double>::quiet_NaN();
        row.flag = e.what();
      }
      return row;
  });
  // For the criterion the interesting exponent is that of g itself.
  std::vector<double> x, y;
  for (const auto& r : table.rows)
    if (r.flag.empty() && r.lhs > 0) {
      x.push_back(r.grid);
      y.push_back(r.lhs);
    }
  table.growth_exponent = loglog_slope(x, y);
  return table;
}

}  // namespace qheat

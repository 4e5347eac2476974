#include "qheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace qheat {

GaussLegendreRule::GaussLegendreRule(int order) {
  if (order < 1) throw std::invalid_argument("GaussLegendreRule: order must be positive");
  const Eigen::Index m = order;
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the Legendre recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  nodes_ = es.eigenvalues();
  weights_.resize(m);
  // Newton polish on P_m, then weights from P_m'.
  for (Eigen::Index i = 0; i < m; ++i) {
    double x = nodes_[i];
    double dp = 1.0;
    for (int it = 0; it < 3; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      x -= p1 / dp;
    }
    nodes_[i] = x;
    weights_[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

const GaussLegendreRule& GaussLegendreRule::of_order(int order) {
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> rules;
  std::lock_guard lock(mu);
  auto it = rules.find(order);
  if (it == rules.end()) it = rules.emplace(order, GaussLegendreRule(order)).first;
  return it->second;
}

namespace {

struct Panel {
  double a, b, value, error;
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                                    double tol, const AdaptiveOptions& opts) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate_adaptive: need an interval");
  if (!(tol > 0)) throw std::invalid_argument("integrate_adaptive: tolerance must be positive");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i])) throw std::invalid_argument("integrate_adaptive: need a < b");

  const GaussLegendreRule& rule = GaussLegendreRule::of_order(opts.order);
  int evaluations = 0;
  auto make_panel = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double whole = rule.integrate(f, a, b);
    const double left = rule.integrate(f, a, mid);
    const double right = rule.integrate(f, mid, b);
    evaluations += 3 * rule.order();
    return Panel{a, b, left + right, std::abs(whole - left - right)};
  };

  // Panels stay sorted by position; the worst one is split until the summed
  // estimate meets tol. Ties go to the leftmost panel, so runs are reproducible.
  std::vector<Panel> panels;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) panels.push_back(make_panel(breakpoints[i - 1], breakpoints[i]));

  auto total_error = [&panels] {
    double e = 0.0;
    for (const auto& p : panels) e += p.error;
    return e;
  };

  int splits = 0;
  double error = total_error();
  while (!(error <= tol) && splits < opts.max_subdivisions) {
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const double a = worst->a, b = worst->b;
    const double mid = 0.5 * (a + b);
    if (!(a < mid && mid < b)) break;
    const Panel left = make_panel(a, mid);
    const Panel right = make_panel(mid, b);
    *worst = right;
    panels.insert(worst, left);
    ++splits;
    error = total_error();
  }

  double value = 0.0;
  for (const auto& p : panels) value += p.value;
  QuadratureResult result{value, error, evaluations};
  if (!(error <= tol)) {
    std::ostringstream msg;
    msg << "integrate_adaptive: no convergence after " << splits << " subdivisions (error estimate " << error
        << ", tolerance " << tol << ")";
    throw QuadratureError(msg.str(), result);
  }
  return result;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                                    const AdaptiveOptions& opts) {
  return integrate_adaptive(f, std::vector<double>{a, b}, tol, opts);
}

QuadratureResult weyl_integral(const std::function<double(double)>& g, double tol, const AdaptiveOptions& opts) {
  constexpr double pi = std::numbers::pi;
  auto weighted = [&g](double theta) {
    const double s = std::sin(0.5 * theta);
    return (2.0 / pi) * g(theta) * s * s;
  };
  return integrate_adaptive(weighted, 0.0, pi, tol, opts);
}

int panel_order(Smoothness s) {
  switch (s) {
    case Smoothness::analytic:
      return 20;
    case Smoothness::smooth:
      return 12;
    case Smoothness::piecewise:
      return 6;
    case Smoothness::rough:
      return 3;
  }
  return 12;
}

MeasureSpec MeasureSpec::atom(double x, double w) {
  MeasureSpec m;
  m.add_atom(x, w);
  return m;
}

MeasureSpec& MeasureSpec::add_atom(double x, double w) {
  atoms_.push_back({x, w});
  return *this;
}

MeasureSpec& MeasureSpec::set_density(Density d) {
  density_ = std::move(d);
  return *this;
}

Density MeasureSpec::table_density(std::vector<double> xs, std::vector<double> ds) {
  if (xs.size() != ds.size() || xs.size() < 2) throw std::invalid_argument("density table: need at least two rows");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i])) throw std::invalid_argument("density table: x column must be strictly increasing");
  for (double d : ds)
    if (!(d >= 0) || !std::isfinite(d)) throw std::invalid_argument("density table: densities must be finite and >= 0");
  Density out;
  out.smoothness = Smoothness::piecewise;
  out.breakpoints = xs;
  out.support_begin = xs.front();
  out.support_end = xs.back();
  out.f = [xs = std::move(xs), ds = std::move(ds)](double x) {
    if (x < xs.front() || x > xs.back()) return 0.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ds.back();
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return (1.0 - t) * ds[j - 1] + t * ds[j];
  };
  return out;
}

Density MeasureSpec::read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("density table: cannot open " + path);
  std::vector<double> xs, ds;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
      throw std::invalid_argument("density table: expected two columns in '" + line + "'");
    double x = 0.0, d = 0.0;
    try {
      x = std::stod(a);
      d = std::stod(b);
    } catch (const std::exception&) {
      if (xs.empty()) continue;  // header row
      throw std::invalid_argument("density table: bad number in '" + line + "'");
    }
    xs.push_back(x);
    ds.push_back(d);
  }
  return table_density(std::move(xs), std::move(ds));
}

MeasureSpec MeasureSpec::parse(std::string_view text) {
  MeasureSpec m;
  std::string spec(text);
  if (spec.empty() || spec == "0" || spec == "none") return m;
  std::istringstream parts(spec);
  std::string part;
  while (std::getline(parts, part, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("measure: expected key=value in '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string value = part.substr(eq + 1);
    if (key == "atoms") {
      std::istringstream atoms(value);
      std::string atom;
      while (std::getline(atoms, atom, ',')) {
        const auto colon = atom.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("measure: atom must be x:w, got '" + atom + "'");
        try {
          m.add_atom(std::stod(atom.substr(0, colon)), std::stod(atom.substr(colon + 1)));
        } catch (const std::invalid_argument&) {
          throw std::invalid_argument("measure: bad atom '" + atom + "'");
        }
      }
    } else if (key == "density") {
      if (value == "none") continue;
      if (value.rfind("table:", 0) == 0) {
        m.set_density(read_table(value.substr(6)));
      } else {
        throw std::invalid_argument("measure: density must be none or table:<file>");
      }
    } else {
      throw std::invalid_argument("measure: unknown key '" + key + "'");
    }
  }
  return m;
}

void MeasureSpec::validate(double n) const {
  for (const auto& a : atoms_) {
    if (!(a.mass > 0) || !std::isfinite(a.mass)) throw std::invalid_argument("measure: atom masses must be positive");
    if (!(a.location >= 0) || !(a.location <= n)) throw std::invalid_argument("measure: atom outside [0, n]");
    if (a.location == n) throw std::invalid_argument("measure: no atom allowed at x = n");
  }
  if (density_) {
    if (!density_->f) throw std::invalid_argument("measure: empty density");
    const double end = density_->support_end < 0 ? n : density_->support_end;
    if (density_->support_begin < 0 || end > n || !(density_->support_begin < end))
      throw std::invalid_argument("measure: density support must lie in [0, n]");
  }
}

MeasureSpec operator+(const MeasureSpec& a, const MeasureSpec& b) {
  MeasureSpec out = a;
  for (const auto& at : b.atoms_) out.atoms_.push_back(at);
  if (b.density_) {
    if (!out.density_) {
      out.density_ = b.density_;
    } else {
      Density sum;
      const Density& da = *a.density_;
      const Density& db = *b.density_;
      sum.smoothness = std::max(da.smoothness, db.smoothness);
      sum.support_begin = std::min(da.support_begin, db.support_begin);
      sum.support_end = (da.support_end < 0 || db.support_end < 0) ? -1.0 : std::max(da.support_end, db.support_end);
      sum.breakpoints = da.breakpoints;
      sum.breakpoints.insert(sum.breakpoints.end(), db.breakpoints.begin(), db.breakpoints.end());
      sum.f = [fa = da.f, fb = db.f](double x) { return fa(x) + fb(x); };
      out.density_ = std::move(sum);
    }
  }
  return out;
}

double integrate_measure(const std::function<double(double)>& f, const MeasureSpec& nu, double n, double tol) {
  nu.validate(n);
  double total = 0.0;
  for (const auto& a : nu.atoms()) total += a.mass * f(a.location);
  if (const auto& d = nu.density()) {
    const double lo = d->support_begin;
    const double hi = d->support_end < 0 ? n : d->support_end;
    std::vector<double> cuts{lo, hi};
    for (double x : d->breakpoints)
      if (x > lo && x < hi) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    AdaptiveOptions opts;
    opts.order = panel_order(d->smoothness);
    const auto& density = d->f;
    total += integrate_adaptive([&](double x) { return f(x) * density(x); }, cuts, tol, opts).value;
  }
  return total;
}

}  // namespace qheat

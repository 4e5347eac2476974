#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qheat {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Thrown when adaptive refinement runs out of subdivisions; carries the best estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best) : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

/// m-point Gauss-Legendre rule on [-1, 1].
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int order);

  /// Shared instance per order.
  static const GaussLegendreRule& of_order(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(mid + half * nodes_[i]);
    return half * acc;
  }

 private:
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
};

struct AdaptiveOptions {
  int order = 15;
  int max_subdivisions = 4000;
};

/// Globally adaptive bisection with fixed-order Gauss-Legendre panels. The
/// error estimate is the summed |Q(panel) - Q(left) - Q(right)|; success means
/// error_estimate <= tol.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                                    const AdaptiveOptions& opts = {});

/// Same, starting from the given breakpoints (sorted, first = a, last = b).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                                    double tol, const AdaptiveOptions& opts = {});

/// (2/pi) int_0^pi g(theta) sin^2(theta/2) dtheta: the SO(3) Haar measure pushed to conjugacy classes.
QuadratureResult weyl_integral(const std::function<double(double)>& g, double tol, const AdaptiveOptions& opts = {});

enum class Smoothness { analytic, smooth, piecewise, rough };

/// Panel order matched to the declared regularity of a density.
int panel_order(Smoothness s);

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

struct Density {
  std::function<double(double)> f;
  Smoothness smoothness = Smoothness::smooth;
  /// Integration breakpoints inside the support, e.g. table nodes.
  std::vector<double> breakpoints;
  double support_begin = 0.0;
  /// Upper end of the support; negative means "up to n".
  double support_end = -1.0;
};

/// A finite measure on [0, n]: finitely many atoms plus an optional density.
class MeasureSpec {
 public:
  MeasureSpec() = default;

  static MeasureSpec zero() { return {}; }
  static MeasureSpec atom(double x, double w);

  /// "atoms=x1:w1,x2:w2;density=none|table:<file>"; table files are two-column CSV (x, density).
  static MeasureSpec parse(std::string_view text);

  /// Piecewise-linear density through (x_i, d_i).
  static Density table_density(std::vector<double> xs, std::vector<double> ds);
  static Density read_table(const std::string& path);

  MeasureSpec& add_atom(double x, double w);
  MeasureSpec& set_density(Density d);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<Density>& density() const { return density_; }
  bool is_zero() const { return atoms_.empty() && !density_; }

  /// Throws unless every atom lies in [0, n), masses are positive and the density is supported in [0, n].
  void validate(double n) const;

  /// Sum of two measures (atoms concatenated, densities added).
  friend MeasureSpec operator+(const MeasureSpec& a, const MeasureSpec& b);

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
};

/// sum_i w_i f(x_i) + int f * density over [0, n].
double integrate_measure(const std::function<double(double)>& f, const MeasureSpec& nu, double n, double tol);

}  // namespace qheat

#pragma once

// Hardy-Littlewood-Sobolev and Hausdorff-Young left-hand sides on central
// elements, the t^s C_omega criterion, and sharpness scans.
//
// For central f = sum c_k chi_k the Fourier coefficient at level k is
// f^(k) = (c_k / n_k) Id_{n_k} (Schur orthogonality against the matrix
// coefficients of u^k), hence n_k ||f^(k)||_HS^2 = |c_k|^2. Nothing below
// forms the n_k x n_k blocks.

#include <string>
#include <string_view>
#include <vector>

#include "qheat/central_algebra.hpp"

namespace qheat {

/// (sum_k (1+k)^{-s(2/p-1)} |c_k|^2)^{1/2}, p in (1, 2].
double hls_lhs(const CentralElement<double>& x, double s, double p);

/// (sum_k (1+k)^{-s} |c_k|^{p'})^{1/p'}, p' = p/(p-1), p in (1, 2].
double hy_lhs(const CentralElement<double>& x, double s, double p);

/// Upper bound for sum_{k>K} (1+k)^2 q^k, q in (0, 1).
double weighted_geometric_tail(long K, double q);

/// t^s sum_{k=0}^{K} (1+k)^2 exp(-2t(1+c_k)) for the heat rates at n >= 5.
double g_criterion_truncated(int n, double s, double t, long K);

struct CriterionValue {
  double value = 0.0;
  long K = 0;
  /// t^s e^{-2t} sum_{k>K} (1+k)^2 e^{-2tk/n}, the bound on what was dropped.
  double tail = 0.0;
};

/// g_criterion_truncated with the smallest K whose tail bound (using c_k >= k/n) is below tail_tol.
CriterionValue g_criterion(int n, double s, double t, double tail_tol = 1e-12);

enum class ScanKind { hls, hy };

struct Family {
  enum class Kind { poly_decay, heat_kernel };
  Kind kind = Kind::poly_decay;
  /// Decay exponent of the poly family.
  double a = 2.0;

  /// "poly:a=2", "poly" or "heat".
  static Family parse(std::string_view text);
  std::string to_string() const;
};

/// c_k = (1+k)^{-a}, k = 0..N-1.
CentralElement<double> poly_decay_member(int n, double a, int N);

/// Below this t the coefficients n_k e^{-c_k t} are not square summable: 2 phi sqrt(n(n-4)), sqrt n = 2 cosh phi.
double heat_kernel_threshold(int n);

/// c_k = n_k e^{-c_k t}, truncated where the l^1 mass of the rest is below tol.
/// Throws for t at or below the threshold, or when more than max_level levels are needed.
CentralElement<double> heat_kernel_member(int n, double t, double tol = 1e-12, int max_level = 128);

struct SharpnessScanConfig {
  int n = 5;
  double s = 3.0;
  double p = 1.5;
  ScanKind kind = ScanKind::hls;
  Family family;
  /// N values for the poly family, t values for the heat family.
  std::vector<double> grid;
  double tol = 1e-12;
  int max_level = 128;

  void validate() const;
};

struct ScanRow {
  double grid = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  /// Empty when the row is fine; otherwise the failure.
  std::string flag;
};

struct ScanTable {
  std::vector<ScanRow> rows;
  /// Least-squares slope of log ratio against log grid over the unflagged rows (NaN if fewer than two).
  double growth_exponent = 0.0;
  std::string label = "evidence";
};

/// Rows are computed in parallel and returned in grid order; rhs = ||f||_p.
ScanTable sharpness_scan(const SharpnessScanConfig& cfg);

/// One row per t: lhs = g with the automatic K, rhs = g with 2K, ratio = lhs / rhs.
ScanTable criterion_scan(int n, double s, const std::vector<double>& t_grid, double tail_tol = 1e-12);

/// Slope of the least-squares line through (log x_i, log y_i).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qheat

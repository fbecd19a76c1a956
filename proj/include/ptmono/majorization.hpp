#pragma once

// Majorization x < y and weak submajorization x <_w y on real vectors,
// the componentwise x^+ and x^p maps, and a doubly-stochastic test.

#include <ptmono/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ptmono {

using RealVector = std::vector<double>;

inline constexpr double kMajTol = 1e-9;

inline RealVector sorted_descending(std::span<const double> x) {
  RealVector v(x.begin(), x.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

namespace detail {

inline void check_majorization_args(std::span<const double> y, std::span<const double> x) {
  if (x.size() != y.size())
    throw Error(ErrorCode::LengthMismatch,
                "vectors of length " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  for (double v : x)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "non-finite vector entry");
  for (double v : y)
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "non-finite vector entry");
}

inline bool prefix_sums_dominated(std::span<const double> y, std::span<const double> x, double tol) {
  const RealVector xs = sorted_descending(x), ys = sorted_descending(y);
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    if (sx > sy + tol) return false;
  }
  return true;
}

}  // namespace detail

/// True when x is weakly submajorized by y: every k-prefix sum of x
/// (sorted descending) is at most that of y.
inline bool weakly_submajorizes(std::span<const double> y, std::span<const double> x, double tol = kMajTol) {
  detail::check_majorization_args(y, x);
  return detail::prefix_sums_dominated(y, x, tol);
}

/// True when x is majorized by y: weak submajorization plus equal totals.
inline bool majorizes(std::span<const double> y, std::span<const double> x, double tol = kMajTol) {
  detail::check_majorization_args(y, x);
  double tx = 0.0, ty = 0.0;
  for (double v : x) tx += v;
  for (double v : y) ty += v;
  return std::abs(tx - ty) <= tol && detail::prefix_sums_dominated(y, x, tol);
}

inline RealVector positive_part(std::span<const double> x) {
  RealVector out(x.begin(), x.end());
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

inline RealVector pth_power(std::span<const double> x, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidOrder, "power must satisfy p >= 1");
  RealVector out;
  out.reserve(x.size());
  for (double v : x) {
    if (v < 0.0) throw Error(ErrorCode::NegativeEntry, "x^p is defined on non-negative vectors only");
    out.push_back(std::pow(v, p));
  }
  return out;
}

inline bool is_doubly_stochastic(const Eigen::MatrixXd& a, double tol = kMajTol) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSquare, "doubly stochastic test needs a square matrix");
  if ((a.array() < -tol).any()) return false;
  const Eigen::VectorXd rows = a.rowwise().sum(), cols = a.colwise().sum().transpose();
  return ((rows.array() - 1.0).abs() <= tol).all() && ((cols.array() - 1.0).abs() <= tol).all();
}

}  // namespace ptmono

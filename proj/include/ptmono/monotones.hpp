#pragma once

// The M_p / N_p family on Hermitian matrices:
//
//   M_p(A) = ( sum_{lambda(A) < 0} |lambda|^p )^{1/p},   N_p(A) = M_p(A)^p,   p >= 1,
//
// and its partial-transpose instances: negativity M_1(rho^pt), the
// concurrence bound 2 M_2(rho^pt) and the tangle bound [2 M_2(rho^pt)]^2.
// Pure-state concurrence and tangle come from the Schmidt coefficients.

#include <ptmono/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace ptmono {

/// Exponent p >= 1.
class MonotoneOrder {
 public:
  explicit MonotoneOrder(double p) : p_(p) {
    if (!(p >= 1.0) || !std::isfinite(p))
      throw Error(ErrorCode::InvalidOrder, "monotone order must be a finite p >= 1, got " + std::to_string(p));
  }
  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Eigenvalues in (-neg_tol, 0) are treated as zero.
inline constexpr double kNegTolRelative = 1e-10;

inline double negative_threshold(const Spectrum& s) {
  return kNegTolRelative * std::max(1.0, s.spectral_radius());
}

struct MonotoneReport {
  double p = 1.0;
  double m_value = 0.0;
  double n_value = 0.0;
  std::vector<double> negative_eigenvalues;
  std::size_t neg_count = 0;
};

namespace detail {

// Scaled p-norm of |negatives| so large p cannot overflow.
inline double negative_p_norm(const std::vector<double>& negatives, double p) {
  double scale = 0.0;
  for (double v : negatives) scale = std::max(scale, -v);
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : negatives) acc += std::pow(-v / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

}  // namespace detail

inline MonotoneReport monotone_report(const Spectrum& s, MonotoneOrder order) {
  MonotoneReport r;
  r.p = order.value();
  r.negative_eigenvalues = s.negative_part(negative_threshold(s));
  r.neg_count = r.negative_eigenvalues.size();
  r.m_value = detail::negative_p_norm(r.negative_eigenvalues, r.p);
  r.n_value = std::pow(r.m_value, r.p);
  return r;
}

inline MonotoneReport monotone_report(const HermitianMatrix& a, MonotoneOrder order) {
  return monotone_report(hermitian_eigenvalues(a), order);
}

inline double m_p(const HermitianMatrix& a, MonotoneOrder order) { return monotone_report(a, order).m_value; }

inline double n_p(const HermitianMatrix& a, MonotoneOrder order) { return monotone_report(a, order).n_value; }

/// Absolute sum of the negative eigenvalues of rho^{T_B}.
inline double negativity(const DensityMatrix& rho) { return m_p(partial_transpose(rho), MonotoneOrder(1.0)); }

/// 2 M_2(rho^pt); never exceeds the I-concurrence.
inline double concurrence_lower_bound(const DensityMatrix& rho) {
  return 2.0 * m_p(partial_transpose(rho), MonotoneOrder(2.0));
}

/// [2 M_2(rho^pt)]^2; never exceeds the I-tangle.
inline double tangle_lower_bound(const DensityMatrix& rho) {
  const double c = concurrence_lower_bound(rho);
  return c * c;
}

/// sum_{i<j} c_i^2 c_j^2 from the reduced-state eigenvalues mu_i = c_i^2,
/// via ((sum mu)^2 - sum mu^2) / 2.
inline double schmidt_pair_sum(const std::vector<double>& coefficients) {
  double s1 = 0.0, s2 = 0.0;
  for (double c : coefficients) {
    const double mu = c * c;
    s1 += mu;
    s2 += mu * mu;
  }
  return std::max(0.0, (s1 * s1 - s2) / 2.0);
}

/// C(psi) = 2 (sum_{i<j} c_i^2 c_j^2)^{1/2}.
inline double pure_concurrence(const PureState& psi) {
  return 2.0 * std::sqrt(schmidt_pair_sum(schmidt_coefficients(psi)));
}

inline double pure_tangle(const PureState& psi) { return 4.0 * schmidt_pair_sum(schmidt_coefficients(psi)); }

}  // namespace ptmono

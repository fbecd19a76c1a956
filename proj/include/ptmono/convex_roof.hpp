#pragma once

// Numerical convex roofs of the pure-state concurrence and tangle.
//
// Every decomposition rho = sum_i p_i |psi_i><psi_i| into m states arises
// from an m x r isometry U acting on the scaled eigenvectors v_j =
// sqrt(mu_j) e_j of rho:  |psi~_i> = sum_j U_ij v_j,  p_i = <psi~_i|psi~_i>.
// minimize_roof searches over isometries and reports the ensemble average of
// the best decomposition it finds, which is an upper bound on the roof.
//
// For an unnormalised |psi~> with reduced state s = Tr_B |psi~><psi~| and
// weight p, the weighted terms are smooth in |psi~>:
//   p C(psi)   = sqrt(2 (p^2 - Tr s^2)),
//   p C(psi)^2 = 2 (p^2 - Tr s^2) / p,
// which gives closed-form gradients for the Stiefel-manifold descent below.

#include <ptmono/linalg.hpp>
#include <ptmono/monotones.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ptmono {

enum class RoofObjective { Concurrence, Tangle };

/// Eigenvalues of rho at or below this value span the null space.
inline constexpr double kRankTol = 1e-10;

struct Ensemble {
  std::vector<double> probabilities;
  std::vector<PureState> states;

  std::size_t size() const noexcept { return states.size(); }
};

/// max_{jk} | sum_i p_i psi_i psi_i^dagger - rho |_{jk}
inline double reconstruction_error(const Ensemble& e, const DensityMatrix& rho) {
  ComplexMatrix acc = -rho.matrix();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ComplexVector& v = e.states[i].amplitudes();
    acc.noalias() += e.probabilities[i] * (v * v.adjoint());
  }
  return acc.cwiseAbs().maxCoeff();
}

inline double average_objective(const Ensemble& e, RoofObjective objective) {
  double acc = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    acc += e.probabilities[i] *
           (objective == RoofObjective::Concurrence ? pure_concurrence(e.states[i]) : pure_tangle(e.states[i]));
  return acc;
}

struct RoofConfig {
  /// Number of ensemble members m; 0 selects min(r^2, r + 4) for rank r.
  Index ensemble_size = 0;
  int restarts = 32;
  /// Step budget per local-search stage.
  int max_iters = 2000;
  std::uint64_t seed = 0;
  double step_tol = 1e-7;
  RoofObjective objective = RoofObjective::Concurrence;
  /// Optional m x r isometry replacing the first restart's starting point.
  std::optional<ComplexMatrix> warm_start;
};

struct RoofResult {
  double value = 0.0;
  Ensemble best;
  ComplexMatrix best_isometry;
  /// Best value seen after each restart; non-increasing.
  std::vector<double> history;
};

/// Scaled eigenbasis of rho restricted to its support.
class RoofBasis {
 public:
  explicit RoofBasis(const DensityMatrix& rho) : dims_(rho.dims()) {
    const EigenSystem es = hermitian_eigensystem(rho.hermitian());
    Index rank = 0;
    for (double mu : es.spectrum.values)
      if (mu > kRankTol) ++rank;
    scaled_.resize(rho.dim(), rank);
    for (Index j = 0; j < rank; ++j)
      scaled_.col(j) = std::sqrt(es.spectrum.values[static_cast<std::size_t>(j)]) * es.vectors.col(j);
  }

  Index rank() const noexcept { return scaled_.cols(); }
  Index dim() const noexcept { return scaled_.rows(); }
  const BipartiteDims& dims() const noexcept { return dims_; }
  /// n x r, column j = sqrt(mu_j) e_j.
  const ComplexMatrix& scaled() const noexcept { return scaled_; }

  /// Columns are the unnormalised ensemble vectors psi~_i.
  ComplexMatrix unnormalised_states(const ComplexMatrix& u) const { return scaled_ * u.transpose(); }

  Ensemble ensemble(const ComplexMatrix& u) const {
    const ComplexMatrix psi = unnormalised_states(u);
    Ensemble e;
    for (Index i = 0; i < psi.cols(); ++i) {
      const double p = psi.col(i).squaredNorm();
      if (p <= 1e-14) continue;  // members this light cannot move the reconstruction
      e.probabilities.push_back(p);
      e.states.emplace_back(psi.col(i) / std::sqrt(p), dims_);
    }
    double total = 0.0;
    for (double p : e.probabilities) total += p;
    for (double& p : e.probabilities) p /= total;
    return e;
  }

 private:
  BipartiteDims dims_;
  ComplexMatrix scaled_;
};

inline bool is_isometry(const ComplexMatrix& u, double tol = 1e-10) {
  if (u.rows() < u.cols()) return false;
  const ComplexMatrix gram = u.adjoint() * u;
  return (gram - ComplexMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

inline Ensemble ensemble_from_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
  const RoofBasis basis(rho);
  if (u.cols() != basis.rank())
    throw Error(ErrorCode::RankMismatch, "isometry has " + std::to_string(u.cols()) +
                                             " columns but rho has rank " + std::to_string(basis.rank()));
  if (!is_isometry(u)) throw Error(ErrorCode::NotIsometry, "u^dagger u differs from the identity");
  return basis.ensemble(u);
}

namespace detail {

/// Y (Y^dagger Y)^{-1/2}: the closest isometry to a full-column-rank Y.
inline ComplexMatrix polar_isometry(const ComplexMatrix& y) {
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(y.adjoint() * y);
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return y * (es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint());
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline ComplexMatrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      g(i, j) = Complex(re, normal(rng));
    }
  return g;
}

/// Objective value and Euclidean gradient (w.r.t. conj(U)) for one basis.
class RoofObjectiveEvaluator {
 public:
  RoofObjectiveEvaluator(const RoofBasis& basis, RoofObjective objective, double smoothing = 0.0)
      : basis_(basis), objective_(objective), smoothing_(smoothing) {}

  double value(const ComplexMatrix& u) const { return evaluate(u, nullptr); }

  double value_and_gradient(const ComplexMatrix& u, ComplexMatrix& grad) const { return evaluate(u, &grad); }

 private:
  double evaluate(const ComplexMatrix& u, ComplexMatrix* grad) const {
    const ComplexMatrix psi = basis_.unnormalised_states(u);
    const Index da = basis_.dims().d_a, db = basis_.dims().d_b;
    ComplexMatrix w;
    if (grad) w.setZero(psi.rows(), psi.cols());
    double total = 0.0;
    for (Index i = 0; i < psi.cols(); ++i) {
      // x(b, a) = psi~[a * d_b + b]; s = x^dagger x is the transposed reduced state of A.
      const Eigen::Map<const ComplexMatrix> x(psi.col(i).data(), db, da);
      const ComplexMatrix s = x.adjoint() * x;
      const double p = s.trace().real();
      const double g = std::max(0.0, p * p - s.squaredNorm());
      if (objective_ == RoofObjective::Concurrence) {
        // sqrt(2g + eps^2) - eps replaces the kink of p C at product members.
        const double eps = smoothing_;
        const double f = std::sqrt(2.0 * g + eps * eps);
        total += f - eps;
        if (grad && f > 1e-14) {
          const ComplexMatrix xs = x * s;
          Eigen::Map<ComplexMatrix> wi(w.col(i).data(), db, da);
          wi = (2.0 / f) * (p * x - xs);
        }
      } else {
        if (p <= 1e-300) continue;
        total += 2.0 * g / p;
        if (grad) {
          const ComplexMatrix xs = x * s;
          Eigen::Map<ComplexMatrix> wi(w.col(i).data(), db, da);
          wi = (4.0 / p) * (p * x - xs) - (2.0 * g / (p * p)) * x;
        }
      }
    }
    if (grad) *grad = (basis_.scaled().adjoint() * w).transpose();
    return total;
  }

  const RoofBasis& basis_;
  RoofObjective objective_;
  double smoothing_;
};

struct LocalSearchResult {
  ComplexMatrix u;
  double value;
};

/// One Riemannian gradient step on the Stiefel manifold with Armijo
/// backtracking from step size eta. Returns false if no step was accepted.
inline bool descent_step(const RoofObjectiveEvaluator& eval, ComplexMatrix& u, ComplexMatrix& grad, double& value,
                         double& eta, double step_tol) {
  const ComplexMatrix uhg = u.adjoint() * grad;
  const ComplexMatrix xi = grad - u * ((uhg + uhg.adjoint()) / 2.0);
  const double xi_norm2 = xi.squaredNorm();
  if (std::sqrt(xi_norm2) <= step_tol) return false;
  for (int bt = 0; bt < 40; ++bt) {
    ComplexMatrix trial = polar_isometry(u - eta * xi);
    if (eval.value(trial) < value - 1e-4 * eta * xi_norm2) {
      u = std::move(trial);
      value = eval.value_and_gradient(u, grad);
      eta *= 2.0;
      return true;
    }
    eta /= 2.0;
  }
  eta = 0.1;
  return false;
}

/// Gradient descent until no step is accepted or max_iters steps are taken.
inline ComplexMatrix descend(const RoofObjectiveEvaluator& eval, ComplexMatrix u, int max_iters, double step_tol) {
  ComplexMatrix grad;
  double value = eval.value_and_gradient(u, grad);
  double eta = 0.1;
  for (int iter = 0; iter < max_iters; ++iter)
    if (!descent_step(eval, u, grad, value, eta, step_tol)) break;
  return u;
}

/// Gradient descent on the exact objective; when no descent step is accepted,
/// random perturbations of shrinking size probe the neighbourhood. Only
/// improving moves are taken.
inline LocalSearchResult refine(const RoofObjectiveEvaluator& eval, ComplexMatrix u, int max_iters,
                                double step_tol, std::mt19937_64& rng) {
  ComplexMatrix grad;
  double value = eval.value_and_gradient(u, grad);
  double eta = 0.1;
  double kick = 0.1;
  for (int iter = 0; iter < max_iters; ++iter) {
    if (descent_step(eval, u, grad, value, eta, step_tol)) continue;
    if (kick < step_tol) break;
    ComplexMatrix trial = polar_isometry(u + kick * gaussian_matrix(u.rows(), u.cols(), rng));
    const double v = eval.value(trial);
    if (v < value) {
      u = std::move(trial);
      value = eval.value_and_gradient(u, grad);
      eta = std::max(eta, 1e-3);
    } else {
      kick /= 2.0;
    }
  }
  return {std::move(u), value};
}

/// Per-member smoothing widths, relative to the average member weight 1/m,
/// used to approach the concurrence roof through smooth surrogates.
inline constexpr std::array<double, 6> kSmoothingSchedule{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

/// Local search from one start. The concurrence objective first follows the
/// smoothing schedule; the result is never worse than the start.
inline LocalSearchResult local_search(const RoofBasis& basis, const RoofConfig& cfg, ComplexMatrix start,
                                      std::mt19937_64& rng) {
  const RoofObjectiveEvaluator eval(basis, cfg.objective);
  const double start_value = eval.value(start);
  ComplexMatrix u = start;
  if (cfg.objective == RoofObjective::Concurrence) {
    const double m = static_cast<double>(start.rows());
    for (double eps : kSmoothingSchedule)
      u = descend(RoofObjectiveEvaluator(basis, cfg.objective, eps / m), std::move(u), cfg.max_iters, cfg.step_tol);
  }
  LocalSearchResult local = refine(eval, std::move(u), cfg.max_iters, cfg.step_tol, rng);
  if (!(local.value <= start_value)) return {std::move(start), start_value};
  return local;
}

}  // namespace detail

inline Index default_ensemble_size(Index rank) { return std::min(rank * rank, rank + 4); }

inline RoofResult minimize_roof(const DensityMatrix& rho, const RoofConfig& cfg = {}) {
  if (cfg.restarts <= 0 || cfg.max_iters <= 0)
    throw Error(ErrorCode::ConvergenceFailure, "restarts * max_iters is zero; no decomposition explored");
  if (!(cfg.step_tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "step_tol must be positive");

  const RoofBasis basis(rho);
  const Index r = basis.rank();
  const Index m = cfg.ensemble_size == 0 ? default_ensemble_size(r) : cfg.ensemble_size;
  if (m < r || m > 4 * r * r)
    throw Error(ErrorCode::InvalidConfig, "ensemble size " + std::to_string(m) + " outside [rank, 4 rank^2] = [" +
                                              std::to_string(r) + ", " + std::to_string(4 * r * r) + "]");
  if (cfg.warm_start) {
    if (cfg.warm_start->rows() != m || cfg.warm_start->cols() != r)
      throw Error(ErrorCode::RankMismatch, "warm start must be an m x rank isometry");
    if (!is_isometry(*cfg.warm_start)) throw Error(ErrorCode::NotIsometry, "warm start is not an isometry");
  }

  RoofResult result;
  double best = std::numeric_limits<double>::infinity();

  // Restarts are independent; the minimum is reduced in restart order, ties
  // keeping the earliest restart.
  for (int k = 0; k < cfg.restarts; ++k) {
    std::mt19937_64 rng(detail::splitmix64(cfg.seed ^ detail::splitmix64(static_cast<std::uint64_t>(k))));
    ComplexMatrix start;
    if (k == 0) {
      start = cfg.warm_start ? *cfg.warm_start : ComplexMatrix(ComplexMatrix::Identity(m, r));
    } else {
      start = detail::polar_isometry(detail::gaussian_matrix(m, r, rng));
    }
    auto local = detail::local_search(basis, cfg, std::move(start), rng);
    if (local.value < best) {
      best = local.value;
      result.best_isometry = std::move(local.u);
    }
    result.history.push_back(best);
  }

  result.best = basis.ensemble(result.best_isometry);
  result.value = average_objective(result.best, cfg.objective);
  return result;
}

}  // namespace ptmono

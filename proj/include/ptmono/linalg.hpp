#pragma once

// Dense complex linear algebra for bipartite states: validated Hermitian
// and density matrices, the Hermitian eigensolver, partial transposition,
// partial traces and Schmidt coefficients.

#include <ptmono/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace ptmono {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Acceptance thresholds applied when values cross the API boundary.
struct Tolerances {
  double herm = 1e-8;
  double trace = 1e-8;
  double psd = 1e-8;
  double norm = 1e-8;
  double imag = 1e-8;
};

/// Relative accuracy targeted by the eigensolver.
inline constexpr double kEigTol = 1e-10;

namespace detail {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const auto z = m(i, j);
      if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z))) return false;
    }
  return true;
}

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Square complex matrix equal to its conjugate transpose up to `herm_tol`
/// relative to max(1, largest entry magnitude). The stored matrix is the
/// exactly Hermitian part (m + m^dagger) / 2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m, double herm_tol = Tolerances{}.herm) {
    if (m.rows() != m.cols() || m.rows() == 0)
      throw Error(ErrorCode::DimensionMismatch,
                  "Hermitian matrix must be square and non-empty, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!detail::all_finite(m)) throw Error(ErrorCode::NonFiniteInput, "matrix has NaN/Inf entries");
    const double scale = std::max(1.0, detail::max_abs(m));
    const double asym = detail::max_abs(m - m.adjoint());
    if (asym > herm_tol * scale)
      throw Error(ErrorCode::NonHermitianInput,
                  "max |m - m^dagger| = " + std::to_string(asym) + " exceeds tolerance");
    mat_ = (m + m.adjoint()) / 2.0;
  }

  Index dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Complex operator()(Index i, Index j) const { return mat_(i, j); }
  Complex trace() const { return mat_.trace(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "sum of matrices with different sizes");
    return HermitianMatrix(Trusted{}, a.mat_ + b.mat_);
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(Trusted{}, s * a.mat_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a) { return HermitianMatrix(Trusted{}, -a.mat_); }

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, ComplexMatrix m) : mat_(std::move(m)) {}

  ComplexMatrix mat_;
};

/// Local dimensions of a bipartite system A (x) B; row-major index i * d_b + j.
struct BipartiteDims {
  Index d_a = 1;
  Index d_b = 1;

  Index total() const noexcept { return d_a * d_b; }
  bool operator==(const BipartiteDims&) const = default;
};

inline void check_dims(const BipartiteDims& dims, Index size, const char* what) {
  if (dims.d_a < 1 || dims.d_b < 1)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": local dimensions must be positive");
  if (dims.total() != size)
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": d_a*d_b = " + std::to_string(dims.total()) +
                    " does not match size " + std::to_string(size));
}

/// Real eigenvalues in descending order.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  /// Eigenvalues strictly below -threshold, most negative last.
  std::vector<double> negative_part(double threshold = 0.0) const {
    std::vector<double> out;
    for (double v : values)
      if (v < -threshold) out.push_back(v);
    return out;
  }

  double spectral_radius() const {
    return values.empty() ? 0.0 : std::max(std::abs(values.front()), std::abs(values.back()));
  }
};

/// Eigenvalues descending with matching eigenvector columns.
struct EigenSystem {
  Spectrum spectrum;
  ComplexMatrix vectors;
};

namespace detail {

inline Eigen::SelfAdjointEigenSolver<ComplexMatrix> solve_hermitian(const ComplexMatrix& m, bool vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, vectors ? Eigen::ComputeEigenvectors
                                                                 : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  return solver;
}

}  // namespace detail

inline Spectrum hermitian_eigenvalues(const HermitianMatrix& m) {
  const auto solver = detail::solve_hermitian(m.matrix(), false);
  const Eigen::VectorXd& ascending = solver.eigenvalues();
  Spectrum s;
  s.values.assign(ascending.data(), ascending.data() + ascending.size());
  std::reverse(s.values.begin(), s.values.end());
  return s;
}

inline EigenSystem hermitian_eigensystem(const HermitianMatrix& m) {
  const auto solver = detail::solve_hermitian(m.matrix(), true);
  const Index n = m.dim();
  EigenSystem out;
  out.spectrum.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.spectrum.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

/// Unit-norm state vector on A (x) B.
class PureState {
 public:
  PureState(ComplexVector amplitudes, BipartiteDims dims, double norm_tol = Tolerances{}.norm)
      : amps_(std::move(amplitudes)), dims_(dims) {
    check_dims(dims_, amps_.size(), "pure state");
    if (!detail::all_finite(amps_)) throw Error(ErrorCode::NonFiniteInput, "pure state has NaN/Inf amplitudes");
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > norm_tol)
      throw Error(ErrorCode::InvalidState, "pure state norm " + std::to_string(norm) + " is not 1");
  }

  /// Rescales a non-zero vector to unit norm.
  static PureState normalized(const ComplexVector& v, BipartiteDims dims) {
    const double norm = v.norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::InvalidState, "cannot normalize the zero vector");
    return PureState(v / norm, dims);
  }

  const ComplexVector& amplitudes() const noexcept { return amps_; }
  const BipartiteDims& dims() const noexcept { return dims_; }
  Index dim() const noexcept { return amps_.size(); }

  /// d_a x d_b coefficient matrix psi(i, j) = amplitude[i * d_b + j].
  ComplexMatrix coefficient_matrix() const {
    ComplexMatrix c(dims_.d_a, dims_.d_b);
    for (Index i = 0; i < dims_.d_a; ++i)
      for (Index j = 0; j < dims_.d_b; ++j) c(i, j) = amps_(i * dims_.d_b + j);
    return c;
  }

 private:
  ComplexVector amps_;
  BipartiteDims dims_;
};

/// Unit-trace positive semidefinite Hermitian matrix on A (x) B.
class DensityMatrix {
 public:
  DensityMatrix(HermitianMatrix mat, BipartiteDims dims, const Tolerances& tol = {})
      : mat_(std::move(mat)), dims_(dims) {
    check_dims(dims_, mat_.dim(), "density matrix");
    const Complex tr = mat_.trace();
    if (std::abs(tr.real() - 1.0) > tol.trace || std::abs(tr.imag()) > tol.trace)
      throw Error(ErrorCode::InvalidState, "density matrix trace " + std::to_string(tr.real()) + " is not 1");
    const Spectrum s = hermitian_eigenvalues(mat_);
    if (s.values.back() < -tol.psd)
      throw Error(ErrorCode::InvalidState,
                  "density matrix has eigenvalue " + std::to_string(s.values.back()) + " below -psd_tol");
  }

  DensityMatrix(const ComplexMatrix& m, BipartiteDims dims, const Tolerances& tol = {})
      : DensityMatrix(HermitianMatrix(m, tol.herm), dims, tol) {}

  static DensityMatrix from_pure(const PureState& psi) {
    const ComplexVector& v = psi.amplitudes();
    return DensityMatrix(HermitianMatrix(v * v.adjoint()), psi.dims());
  }

  const HermitianMatrix& hermitian() const noexcept { return mat_; }
  const ComplexMatrix& matrix() const noexcept { return mat_.matrix(); }
  const BipartiteDims& dims() const noexcept { return dims_; }
  Index dim() const noexcept { return mat_.dim(); }

 private:
  HermitianMatrix mat_;
  BipartiteDims dims_;
};

enum class Subsystem { A, B };

/// Transposes the indices of one tensor factor. For B:
/// out[(i,j),(k,l)] = m[(i,l),(k,j)]; for A: out[(i,j),(k,l)] = m[(k,j),(i,l)].
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const BipartiteDims& dims, Subsystem which) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "partial transpose of a non-square matrix");
  check_dims(dims, m.rows(), "partial transpose");
  const Index da = dims.d_a, db = dims.d_b;
  ComplexMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < da; ++k)
        for (Index l = 0; l < db; ++l) {
          const Index row = i * db + j, col = k * db + l;
          out(row, col) = which == Subsystem::B ? m(i * db + l, k * db + j) : m(k * db + j, i * db + l);
        }
  return out;
}

inline HermitianMatrix partial_transpose(const HermitianMatrix& m, const BipartiteDims& dims, Subsystem which) {
  return HermitianMatrix(partial_transpose(m.matrix(), dims, which));
}

inline HermitianMatrix partial_transpose(const DensityMatrix& rho, Subsystem which = Subsystem::B) {
  return partial_transpose(rho.hermitian(), rho.dims(), which);
}

/// Traces out the named subsystem and returns the state of the other one.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteDims& dims, Subsystem traced) {
  check_dims(dims, m.rows(), "partial trace");
  const Index da = dims.d_a, db = dims.d_b;
  if (traced == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Index i = 0; i < da; ++i)
      for (Index k = 0; k < da; ++k)
        for (Index j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Index i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
  return out;
}

/// Reduced state of `keep` for a pure state, built from the coefficient matrix.
inline ComplexMatrix reduced_state(const PureState& psi, Subsystem keep) {
  const ComplexMatrix c = psi.coefficient_matrix();
  if (keep == Subsystem::A) return c * c.adjoint();
  return (c.adjoint() * c).transpose();
}

/// Schmidt coefficients, descending, length min(d_a, d_b). Squares of the
/// returned values are the eigenvalues of the smaller reduced state.
inline std::vector<double> schmidt_coefficients(const PureState& psi) {
  const Subsystem smaller = psi.dims().d_a <= psi.dims().d_b ? Subsystem::A : Subsystem::B;
  const Spectrum s = hermitian_eigenvalues(HermitianMatrix(reduced_state(psi, smaller)));
  std::vector<double> c;
  c.reserve(s.size());
  for (double mu : s.values) c.push_back(std::sqrt(std::max(mu, 0.0)));
  return c;
}

/// <Psi+|rho|Psi+> for |Psi+> = sum_i |ii> / sqrt(d).
inline double fidelity_max_entangled(const DensityMatrix& rho, double imag_tol = Tolerances{}.imag) {
  const Index d = rho.dims().d_a;
  if (d != rho.dims().d_b)
    throw Error(ErrorCode::DimensionMismatch, "maximally entangled fidelity needs d_a == d_b");
  Complex acc = 0.0;
  for (Index i = 0; i < d; ++i)
    for (Index k = 0; k < d; ++k) acc += rho.matrix()(i * d + i, k * d + k);
  acc /= static_cast<double>(d);
  if (std::abs(acc.imag()) > imag_tol)
    throw Error(ErrorCode::InvalidState, "fidelity has imaginary part " + std::to_string(acc.imag()));
  return std::clamp(acc.real(), 0.0, 1.0);
}

}  // namespace ptmono

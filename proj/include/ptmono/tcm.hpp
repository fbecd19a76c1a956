#pragma once

// Two-atom Tavis-Cummings model on resonance, interaction picture:
//
//   H = g sum_{k=1,2} (a sigma_k^+ + a^dagger sigma_k^-)
//
// on atom1 (x) atom2 (x) Fock(0..n_max), basis index (a1 * 2 + a2) * (n_max + 1) + n
// with atomic level 0 = ground, 1 = excited. H conserves the excitation
// number a^dagger a + sigma_1^+ sigma_1^- + sigma_2^+ sigma_2^-, so it is
// block diagonal with blocks {|ee,n>, |eg,n+1>, |ge,n+1>, |gg,n+2>} (fewer
// members at the edges of the truncated space); each block is exponentiated
// exactly from its eigendecomposition.

#include <ptmono/linalg.hpp>
#include <ptmono/monotones.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace ptmono {

inline constexpr int kGround = 0;
inline constexpr int kExcited = 1;

/// Truncated coherent state: c_n proportional to alpha^n / sqrt(n!) via
/// c_{n+1} = c_n alpha / sqrt(n+1), renormalised over 0..n_max.
inline Eigen::VectorXd coherent_state(double alpha, Index n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidConfig, "n_max must be non-negative");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidConfig, "alpha must be finite and >= 0");
  Eigen::VectorXd c(n_max + 1);
  c(0) = std::exp(-alpha * alpha / 2.0);
  for (Index n = 0; n < n_max; ++n) c(n + 1) = c(n) * alpha / std::sqrt(static_cast<double>(n + 1));
  const double weight = c.squaredNorm();
  if (weight < 1.0 - 1e-6)
    throw Error(ErrorCode::TruncationInadequate,
                "Fock truncation n_max = " + std::to_string(n_max) + " keeps only " + std::to_string(weight) +
                    " of the coherent-state weight");
  return c / std::sqrt(weight);
}

struct TcmConfig {
  double g = 1.0;
  double nbar = 100.0;
  Index n_max = 200;
  /// Evolution times t; rows report the effective time g t.
  std::vector<double> times;

  void validate() const {
    if (!(g >= 0.0) || !std::isfinite(g)) throw Error(ErrorCode::InvalidConfig, "coupling g must be finite and >= 0");
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw Error(ErrorCode::InvalidConfig, "nbar must be finite and >= 0");
    if (static_cast<double>(n_max) < nbar + 6.0 * std::sqrt(nbar))
      throw Error(ErrorCode::TruncationInadequate,
                  "n_max = " + std::to_string(n_max) + " is below nbar + 6 sqrt(nbar)");
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (!(times[i] >= 0.0) || !std::isfinite(times[i]))
        throw Error(ErrorCode::InvalidConfig, "times must be finite and non-negative");
      if (i > 0 && !(times[i] > times[i - 1])) throw Error(ErrorCode::InvalidConfig, "times must be strictly increasing");
    }
  }
};

/// n uniformly spaced times on [0, t_max] (a single point at 0 when n == 1).
inline std::vector<double> uniform_times(double t_max, int n) {
  std::vector<double> t;
  for (int k = 0; k < n; ++k) t.push_back(n == 1 ? 0.0 : t_max * static_cast<double>(k) / (n - 1));
  return t;
}

/// Hamiltonian blocks of the two-atom model on a truncated Fock space.
class TcmPropagator {
 public:
  TcmPropagator(double g, Index n_max) : n_max_(n_max) {
    if (n_max < 0) throw Error(ErrorCode::InvalidConfig, "n_max must be non-negative");
    const Index fock = n_max + 1;
    // Excitation number N ranges over 0..n_max+2.
    for (Index exc = 0; exc <= n_max + 2; ++exc) {
      Block b;
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
          const Index n = exc - a1 - a2;
          if (n >= 0 && n < fock) b.members.push_back(index(a1, a2, n));
        }
      const auto size = static_cast<Index>(b.members.size());
      ComplexMatrix h = ComplexMatrix::Zero(size, size);
      for (Index r = 0; r < size; ++r)
        for (Index c = 0; c < size; ++c) h(r, c) = g * coupling(b.members[r], b.members[c]);
      const EigenSystem es = hermitian_eigensystem(HermitianMatrix(h));
      b.energies = Eigen::Map<const Eigen::VectorXd>(es.spectrum.values.data(), size);
      b.vectors = es.vectors;
      blocks_.push_back(std::move(b));
    }
  }

  Index n_max() const noexcept { return n_max_; }
  Index dim() const noexcept { return 4 * (n_max_ + 1); }

  Index index(int a1, int a2, Index n) const { return (a1 * 2 + a2) * (n_max_ + 1) + n; }

  /// exp(-i H t) applied to `initial`.
  ComplexVector evolve(const ComplexVector& initial, double t) const {
    ComplexVector out = ComplexVector::Zero(initial.size());
    for (const Block& b : blocks_) {
      const auto size = static_cast<Index>(b.members.size());
      ComplexVector local(size);
      for (Index k = 0; k < size; ++k) local(k) = initial(b.members[k]);
      if (local.squaredNorm() == 0.0) continue;
      ComplexVector coeff = b.vectors.adjoint() * local;
      for (Index k = 0; k < size; ++k) coeff(k) *= std::polar(1.0, -b.energies(k) * t);
      local = b.vectors * coeff;
      for (Index k = 0; k < size; ++k) out(b.members[k]) = local(k);
    }
    return out;
  }

 private:
  struct Block {
    std::vector<Index> members;
    Eigen::VectorXd energies;
    ComplexMatrix vectors;
  };

  // <row| sum_k (a sigma_k^+ + a^dagger sigma_k^-) |col> in units of g.
  double coupling(Index row, Index col) const {
    const Index fock = n_max_ + 1;
    const int ar = static_cast<int>(row / fock), ac = static_cast<int>(col / fock);
    const Index nr = row % fock, nc = col % fock;
    const int r1 = ar / 2, r2 = ar % 2, c1 = ac / 2, c2 = ac % 2;
    const int flips = (r1 != c1) + (r2 != c2);
    if (flips != 1) return 0.0;
    const int dexc = (r1 - c1) + (r2 - c2);  // +1: atom raised, photon absorbed
    if (dexc == 1 && nr == nc - 1) return std::sqrt(static_cast<double>(nc));
    if (dexc == -1 && nr == nc + 1) return std::sqrt(static_cast<double>(nr));
    return 0.0;
  }

  Index n_max_;
  std::vector<Block> blocks_;
};

/// |e, e> (x) |alpha> with alpha = sqrt(nbar).
inline ComplexVector tcm_initial_state(const TcmConfig& cfg) {
  const Eigen::VectorXd field = coherent_state(std::sqrt(cfg.nbar), cfg.n_max);
  const Index fock = cfg.n_max + 1;
  ComplexVector psi = ComplexVector::Zero(4 * fock);
  psi.segment((kExcited * 2 + kExcited) * fock, fock) = field.cast<Complex>();
  return psi;
}

/// Total population in Fock levels n_max - 1 and n_max.
inline double top_fock_population(const ComplexVector& psi, Index n_max) {
  const Index fock = n_max + 1;
  double pop = 0.0;
  for (Index a = 0; a < 4; ++a)
    for (Index n = std::max<Index>(0, n_max - 1); n <= n_max; ++n) pop += std::norm(psi(a * fock + n));
  return pop;
}

/// States on atom1 (x) [atom2 (x) field], dims (2, 2 (n_max + 1)).
inline std::vector<PureState> evolve(const TcmConfig& cfg, const ComplexVector& initial) {
  cfg.validate();
  const TcmPropagator prop(cfg.g, cfg.n_max);
  if (initial.size() != prop.dim()) throw Error(ErrorCode::DimensionMismatch, "initial state has the wrong size");
  const BipartiteDims dims{2, 2 * (cfg.n_max + 1)};
  std::vector<PureState> out;
  out.reserve(cfg.times.size());
  for (double t : cfg.times) {
    ComplexVector psi = t == 0.0 ? initial : prop.evolve(initial, t);
    if (top_fock_population(psi, cfg.n_max) > 1e-6)
      throw Error(ErrorCode::TruncationInadequate, "population leaks into the top Fock levels at t = " + std::to_string(t));
    out.emplace_back(std::move(psi), dims);
  }
  return out;
}

inline std::vector<PureState> evolve(const TcmConfig& cfg) { return evolve(cfg, tcm_initial_state(cfg)); }

/// Traces out atom 1, leaving atom 2 (x) field with dims (2, n_max + 1).
inline DensityMatrix reduce_atom_field(const PureState& total) {
  if (total.dims().d_a != 2 || total.dims().d_b % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "expected a state on 2 (x) 2 (x) field");
  const Index fock = total.dims().d_b / 2;
  const ComplexMatrix rho = partial_trace(total.amplitudes() * total.amplitudes().adjoint(), total.dims(), Subsystem::A);
  return DensityMatrix(rho, {2, fock});
}

struct TcmRow {
  double gt = 0.0;
  double n2pt = 0.0;
  int rank = 0;
  double purity = 0.0;
};

struct TcmTrace {
  std::vector<TcmRow> rows;
};

/// Number of eigenvalues above the rank threshold.
inline int numerical_rank(const Spectrum& s, double tol = 1e-10) {
  int r = 0;
  for (double v : s.values)
    if (v > tol) ++r;
  return r;
}

inline TcmRow analyse_atom_field(double gt, const DensityMatrix& rho) {
  TcmRow row;
  row.gt = gt;
  row.n2pt = tangle_lower_bound(rho);
  row.rank = numerical_rank(hermitian_eigenvalues(rho.hermitian()));
  row.purity = rho.matrix().squaredNorm();
  return row;
}

inline TcmTrace run_trace(const TcmConfig& cfg) {
  const auto states = evolve(cfg);
  TcmTrace trace;
  trace.rows.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k)
    trace.rows.push_back(analyse_atom_field(cfg.g * cfg.times[k], reduce_atom_field(states[k])));
  return trace;
}

}  // namespace ptmono

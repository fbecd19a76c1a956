#pragma once

// Isotropic states rho_F = (1 - lambda) I/d^2 + lambda |Psi+><Psi+|, with
// lambda = (d^2 F - 1) / (d^2 - 1), and their closed-form partial-transpose
// spectrum and concurrence/tangle bounds.

#include <ptmono/linalg.hpp>

#include <array>
#include <cmath>
#include <string>

namespace ptmono {

class IsotropicParams {
 public:
  IsotropicParams(long long d, double fidelity) : d_(d), fidelity_(fidelity) {
    if (d < 2) throw Error(ErrorCode::InvalidDimension, "isotropic states need d >= 2, got " + std::to_string(d));
    if (!(fidelity >= 0.0 && fidelity <= 1.0))
      throw Error(ErrorCode::InvalidFidelity, "fidelity must lie in [0, 1], got " + std::to_string(fidelity));
    const double dd = static_cast<double>(d) * static_cast<double>(d);
    mixing_ = (dd * fidelity - 1.0) / (dd - 1.0);
  }

  long long d() const noexcept { return d_; }
  double fidelity() const noexcept { return fidelity_; }
  /// lambda, in [-1/(d^2-1), 1].
  double mixing() const noexcept { return mixing_; }

 private:
  long long d_;
  double fidelity_;
  double mixing_;
};

inline PureState max_entangled(long long d) {
  if (d < 2) throw Error(ErrorCode::InvalidDimension, "maximally entangled state needs d >= 2");
  const Index n = static_cast<Index>(d);
  ComplexVector v = ComplexVector::Zero(n * n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < n; ++i) v(i * n + i) = amp;
  return PureState(std::move(v), {n, n});
}

inline DensityMatrix isotropic_state(const IsotropicParams& p) {
  const Index n = static_cast<Index>(p.d());
  const double lambda = p.mixing();
  const ComplexVector psi = max_entangled(p.d()).amplitudes();
  ComplexMatrix m = (lambda * psi) * psi.adjoint();
  m.diagonal().array() += (1.0 - lambda) / static_cast<double>(n * n);
  return DensityMatrix(m, {n, n});
}

struct EigenvalueMultiplicity {
  double value;
  long long multiplicity;
};

/// Spectrum of rho_F^pt: (1-lambda)/d^2 + lambda/d with multiplicity d(d+1)/2
/// and (1-lambda)/d^2 - lambda/d with multiplicity d(d-1)/2.
inline std::array<EigenvalueMultiplicity, 2> isotropic_pt_spectrum(const IsotropicParams& p) {
  const double d = static_cast<double>(p.d());
  const double lambda = p.mixing();
  const double base = (1.0 - lambda) / (d * d);
  return {{{base + lambda / d, p.d() * (p.d() + 1) / 2}, {base - lambda / d, p.d() * (p.d() - 1) / 2}}};
}

/// Closed-form 2 M_2(rho_F^pt); zero on the closed region lambda <= 1/(d+1),
/// equivalently F <= 1/d (either test suffices so F = 1/d rounds to zero).
inline double isotropic_m2pt(const IsotropicParams& p) {
  const double d = static_cast<double>(p.d());
  const double lambda = p.mixing();
  if (lambda <= 1.0 / (d + 1.0) || d * p.fidelity() <= 1.0) return 0.0;
  return (2.0 / d) * ((lambda - 1.0) / d + lambda) * std::sqrt(d * (d - 1.0) / 2.0);
}

inline double isotropic_n2pt(const IsotropicParams& p) {
  const double m = isotropic_m2pt(p);
  return m * m;
}

}  // namespace ptmono

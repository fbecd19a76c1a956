#include "test_support.hpp"

#include <ptmono/monotones.hpp>
#include <ptmono/states.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace ptmono;
using namespace ptmono::testing;

namespace {

HermitianMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  Index k = 0;
  for (double v : values) m(k, k) = v, ++k;
  return HermitianMatrix(m);
}

const std::array<double, 4> kOrders{1.0, 1.5, 2.0, 3.0};

// Direct double sum 2 sqrt(sum_{i<j} c_i^2 c_j^2).
double concurrence_double_sum(const std::vector<double>& c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) acc += c[i] * c[i] * c[j] * c[j];
  return 2.0 * std::sqrt(acc);
}

}  // namespace

TEST(MonotoneOrder, RejectsBelowOne) {
  EXPECT_THROW(MonotoneOrder(0.99), Error);
  EXPECT_THROW(MonotoneOrder(std::nan("")), Error);
  EXPECT_NO_THROW(MonotoneOrder(1.0));
  EXPECT_NO_THROW(MonotoneOrder(2.5));
}

TEST(Mp, DiagonalExamples) {
  const HermitianMatrix a = diag({-1, -2, 3});
  EXPECT_NEAR(m_p(a, MonotoneOrder(1)), 3.0, 1e-14);
  EXPECT_NEAR(m_p(a, MonotoneOrder(2)), std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(m_p(a, MonotoneOrder(3)), std::cbrt(9.0), 1e-14);
  EXPECT_NEAR(n_p(a, MonotoneOrder(2)), 5.0, 1e-13);
  EXPECT_EQ(n_p(a, MonotoneOrder(1)), m_p(a, MonotoneOrder(1)));
}

TEST(Mp, ZeroOnPositiveSemidefinite) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density({2, 3}, 1 + trial % 6, rng);
    for (double p : kOrders) {
      EXPECT_EQ(m_p(rho.hermitian(), MonotoneOrder(p)), 0.0);
      EXPECT_EQ(n_p(rho.hermitian(), MonotoneOrder(p)), 0.0);
    }
  }
}

TEST(Mp, IgnoresEigenvaluesBelowThreshold) {
  const HermitianMatrix a = diag({1.0, -1e-12, 0.5});
  const MonotoneReport r = monotone_report(a, MonotoneOrder(2));
  EXPECT_EQ(r.neg_count, 0u);
  EXPECT_EQ(r.m_value, 0.0);
}

TEST(Mp, LargeOrderDoesNotOverflow) {
  const HermitianMatrix a = diag({-1e200, -1e200, 1.0});
  EXPECT_NEAR(m_p(a, MonotoneOrder(4)) / 1e200, std::pow(2.0, 0.25), 1e-12);
}

TEST(MonotoneReport, Fields) {
  const MonotoneReport r = monotone_report(diag({-1, -2, 3}), MonotoneOrder(2));
  EXPECT_EQ(r.p, 2.0);
  EXPECT_EQ(r.neg_count, 2u);
  ASSERT_EQ(r.negative_eigenvalues.size(), 2u);
  EXPECT_NEAR(r.negative_eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(r.negative_eigenvalues[1], -2.0, 1e-15);
  EXPECT_NEAR(r.n_value, r.m_value * r.m_value, 1e-14);
}

TEST(PartialTransposeMonotones, BellState) {
  const DensityMatrix bell = DensityMatrix::from_pure(bell_state());
  EXPECT_NEAR(m_p(partial_transpose(bell), MonotoneOrder(1)), 0.5, 1e-14);
  EXPECT_NEAR(negativity(bell), 0.5, 1e-14);
  EXPECT_NEAR(concurrence_lower_bound(bell), 1.0, 1e-14);
  EXPECT_NEAR(tangle_lower_bound(bell), 1.0, 1e-14);
}

TEST(PartialTransposeMonotones, ProductStatesVanish) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix a = random_density({1, 3}, 3, rng), b = random_density({1, 2}, 2, rng);
    const DensityMatrix rho(product_density(a.matrix(), b.matrix()), {3, 2});
    EXPECT_EQ(negativity(rho), 0.0);
    EXPECT_EQ(concurrence_lower_bound(rho), 0.0);
    EXPECT_EQ(tangle_lower_bound(rho), 0.0);
  }
  EXPECT_EQ(concurrence_lower_bound(DensityMatrix::from_pure(product_pure(3, 3))), 0.0);
}

TEST(PartialTransposeMonotones, IsotropicAnchors) {
  EXPECT_NEAR(negativity(isotropic_state(IsotropicParams(2, 1.0))), 0.5, 1e-14);
  EXPECT_NEAR(concurrence_lower_bound(isotropic_state(IsotropicParams(3, 1.0))), 2.0 * std::sqrt(3.0) / 3.0, 1e-12);
  EXPECT_NEAR(tangle_lower_bound(isotropic_state(IsotropicParams(3, 1.0))), 4.0 / 3.0, 1e-12);
}

TEST(PureConcurrence, Anchors) {
  EXPECT_NEAR(pure_concurrence(product_pure(2, 3)), 0.0, 1e-7);
  EXPECT_NEAR(pure_tangle(product_pure(2, 3)), 0.0, 1e-14);
  EXPECT_NEAR(pure_concurrence(bell_state()), 1.0, 1e-14);
  EXPECT_NEAR(pure_tangle(bell_state()), 1.0, 1e-14);
  EXPECT_NEAR(pure_concurrence(max_entangled(3)), std::sqrt(4.0 / 3.0), 1e-14);
  EXPECT_NEAR(pure_tangle(max_entangled(3)), 4.0 / 3.0, 1e-14);
}

TEST(PureConcurrence, IdentityAgreesWithDoubleSum) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const BipartiteDims dims{2 + trial % 4, 2 + trial % 5};
    const PureState psi = random_pure(dims, rng);
    const double c = pure_concurrence(psi);
    EXPECT_NEAR(c, concurrence_double_sum(schmidt_coefficients(psi)), 1e-12);
    const double d = static_cast<double>(std::min(dims.d_a, dims.d_b));
    EXPECT_LE(c, std::sqrt(2.0 * (d - 1.0) / d) + 1e-12);
    EXPECT_NEAR(pure_tangle(psi), c * c, 1e-12);
  }
}

TEST(PartialTransposeMonotones, AgreeWithPureConcurrence) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const BipartiteDims dims{2 + trial % 3, 2 + trial % 4};
    const PureState psi = random_pure(dims, rng);
    EXPECT_NEAR(concurrence_lower_bound(DensityMatrix::from_pure(psi)), pure_concurrence(psi), 1e-8);
  }
}

TEST(Mp, TriangleInequalityAndConvexity) {
  std::mt19937_64 rng(45);
  std::uniform_int_distribution<int> dim(2, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = dim(rng);
    const HermitianMatrix a = random_hermitian(n, rng), b = random_hermitian(n, rng);
    const double alpha = unit(rng);
    for (double p : kOrders) {
      const MonotoneOrder order(p);
      const double ma = m_p(a, order), mb = m_p(b, order);
      EXPECT_LE(m_p(a + b, order), ma + mb + 1e-9);
      EXPECT_LE(m_p(alpha * a + (1.0 - alpha) * b, order), alpha * ma + (1.0 - alpha) * mb + 1e-9);
    }
  }
}

TEST(Mp, TwoQubitPartialTransposeHasOneNegativeEigenvalue) {
  std::mt19937_64 rng(46);
  int entangled = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const DensityMatrix rho = random_density({2, 2}, 1 + trial % 4, rng);
    const HermitianMatrix pt = partial_transpose(rho);
    const MonotoneReport r1 = monotone_report(pt, MonotoneOrder(1));
    EXPECT_LE(r1.neg_count, 1u);
    if (r1.neg_count) ++entangled;
    for (double p : kOrders) EXPECT_NEAR(m_p(pt, MonotoneOrder(p)), r1.m_value, 1e-10);
  }
  EXPECT_GT(entangled, 100);
}

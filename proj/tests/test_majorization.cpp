#include "test_support.hpp"

#include <ptmono/majorization.hpp>

#include <gtest/gtest.h>

using namespace ptmono;
using namespace ptmono::testing;

namespace {

RealVector random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  RealVector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Product of 2-coordinate mixing matrices t I + (1 - t) (swap of i, j).
Eigen::MatrixXd random_doubly_stochastic(Index n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (int k = 0; k < 3 * n; ++k) {
    const Index i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const double t = u(rng);
    Eigen::MatrixXd mix = Eigen::MatrixXd::Identity(n, n);
    mix(i, i) = mix(j, j) = t;
    mix(i, j) = mix(j, i) = 1.0 - t;
    a = mix * a;
  }
  return a;
}

RealVector to_vector(const Eigen::VectorXd& v) { return RealVector(v.data(), v.data() + v.size()); }

}  // namespace

TEST(Majorizes, Examples) {
  EXPECT_TRUE(majorizes(RealVector{1, 0}, RealVector{0.5, 0.5}));
  EXPECT_FALSE(majorizes(RealVector{0.5, 0.5}, RealVector{1, 0}));
  EXPECT_TRUE(majorizes(RealVector{0.5, 0.3, 0.2}, RealVector{0.4, 0.35, 0.25}));
  // Order of entries is irrelevant.
  EXPECT_TRUE(majorizes(RealVector{0.2, 0.5, 0.3}, RealVector{0.25, 0.35, 0.4}));
  // Equal prefix sums but different totals.
  EXPECT_FALSE(majorizes(RealVector{1, 1}, RealVector{1, 0}));
}

TEST(Majorizes, LengthMismatch) {
  try {
    majorizes(RealVector{1, 0}, RealVector{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  EXPECT_THROW(weakly_submajorizes(RealVector{1}, RealVector{}), Error);
}

TEST(WeaklySubmajorizes, Examples) {
  EXPECT_TRUE(weakly_submajorizes(RealVector{3, 0}, RealVector{1, 1}));
  EXPECT_FALSE(weakly_submajorizes(RealVector{1, 1}, RealVector{2, 0}));
  EXPECT_TRUE(weakly_submajorizes(RealVector{0.5, 0.3, 0.2}, RealVector{0.4, 0.35, 0.25}));
}

TEST(WeaklySubmajorizes, ImpliedByMajorization) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const RealVector y = random_vector(5, rng);
    const RealVector x = to_vector(random_doubly_stochastic(5, rng) * Eigen::Map<const Eigen::VectorXd>(y.data(), 5));
    if (majorizes(y, x)) {
      ++checked;
      EXPECT_TRUE(weakly_submajorizes(y, x));
    }
  }
  EXPECT_GT(checked, 250);
}

TEST(PositivePart, Examples) {
  EXPECT_EQ(positive_part(RealVector{-1, 2, -3}), (RealVector{0, 2, 0}));
  EXPECT_EQ(positive_part(RealVector{0, 1.5, 2}), (RealVector{0, 1.5, 2}));
  EXPECT_EQ(positive_part(RealVector{-1, -0.5}), (RealVector{0, 0}));
}

TEST(PthPower, ExamplesAndErrors) {
  EXPECT_EQ(pth_power(RealVector{1, 4}, 2.0), (RealVector{1, 16}));
  EXPECT_EQ(pth_power(RealVector{0.3, 7}, 1.0), (RealVector{0.3, 7}));
  const RealVector r = pth_power(RealVector{0, 9}, 1.5);
  EXPECT_EQ(r[0], 0.0);
  EXPECT_NEAR(r[1], 27.0, 1e-12);
  try {
    pth_power(RealVector{1, -1}, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeEntry);
  }
  try {
    pth_power(RealVector{1}, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidOrder);
  }
}

TEST(DoublyStochastic, Examples) {
  EXPECT_TRUE(is_doubly_stochastic(Eigen::MatrixXd::Identity(3, 3)));
  Eigen::MatrixXd u(2, 2);
  u << 0.5, 0.5, 0.5, 0.5;
  EXPECT_TRUE(is_doubly_stochastic(u));
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0.5, 0.5;
  EXPECT_FALSE(is_doubly_stochastic(bad));
  Eigen::MatrixXd neg(2, 2);
  neg << 1.5, -0.5, -0.5, 1.5;
  EXPECT_FALSE(is_doubly_stochastic(neg));
  EXPECT_THROW(is_doubly_stochastic(Eigen::MatrixXd::Ones(2, 3)), Error);
}

TEST(DoublyStochastic, ActionIsMajorized) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 2 + trial % 7;
    const Eigen::MatrixXd a = random_doubly_stochastic(n, rng);
    ASSERT_TRUE(is_doubly_stochastic(a));
    const RealVector y = random_vector(static_cast<std::size_t>(n), rng, -3.0, 3.0);
    const RealVector x = to_vector(a * Eigen::Map<const Eigen::VectorXd>(y.data(), n));
    EXPECT_TRUE(majorizes(y, x)) << "trial " << trial;
  }
}

TEST(Relations, PositivePartPreservesWeakSubmajorization) {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const RealVector y = random_vector(4, rng), x = random_vector(4, rng);
    if (!weakly_submajorizes(y, x)) continue;
    ++checked;
    EXPECT_TRUE(weakly_submajorizes(sorted_descending(positive_part(y)), positive_part(x)));
  }
  EXPECT_GT(checked, 100);
}

TEST(Relations, PowersPreserveWeakSubmajorization) {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const RealVector y = random_vector(4, rng, 0.0, 2.0), x = random_vector(4, rng, 0.0, 2.0);
    if (!weakly_submajorizes(y, x, 0.0)) continue;
    ++checked;
    for (double p : {1.0, 1.5, 2.0, 3.0}) EXPECT_TRUE(weakly_submajorizes(pth_power(y, p), pth_power(x, p)));
  }
  EXPECT_GT(checked, 100);
}

namespace {

RealVector spectrum_sum(const Spectrum& a, const Spectrum& b) {
  RealVector out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

}  // namespace

TEST(Relations, HermitianSumSpectrumIsMajorized) {
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<int> dim(2, 20);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = dim(rng);
    const HermitianMatrix a = random_hermitian(n, rng), b = random_hermitian(n, rng);
    const Spectrum sum = hermitian_eigenvalues(a + b);
    EXPECT_TRUE(majorizes(spectrum_sum(hermitian_eigenvalues(a), hermitian_eigenvalues(b)), sum.values))
        << "trial " << trial;
    // Same statement for -A, -B: the ascending ordering of A and B.
    const Spectrum neg_sum = hermitian_eigenvalues(-a + -b);
    EXPECT_TRUE(majorizes(spectrum_sum(hermitian_eigenvalues(-a), hermitian_eigenvalues(-b)), neg_sum.values));
  }
}

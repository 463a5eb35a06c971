#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fons/errors.h"
#include "fons/rotations.h"
#include "oracles.h"

namespace fons {
namespace {

Eigen::MatrixXd to_eigen(const TransformArray<double>& a) {
  Eigen::MatrixXd m(a.rows(), 3);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = a(r, c);
  return m;
}

const Eigen::Matrix3d kTheta = Eigen::Vector3d(1, 1, -1).asDiagonal();

TransformArray<double> random_pre_array(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  TransformArray<double> a(dim + 2);
  for (std::size_t r = 1; r < a.rows(); ++r)
    for (std::size_t c = 0; c < 3; ++c) a(r, c) = u(rng);
  do {
    a(0, 0) = 1.0 + 2.0 * std::fabs(u(rng));
    a(0, 1) = 2.0 * u(rng);
    a(0, 2) = 2.0 * u(rng);
  } while (a(0, 0) * a(0, 0) + a(0, 1) * a(0, 1) - a(0, 2) * a(0, 2) < 1.0);
  return a;
}

TEST(GivensTest, PythagoreanTriple) {
  const auto g = compute_givens(3.0, 4.0);
  double x[] = {3.0};
  double y[] = {4.0};
  g.apply(x, y);
  EXPECT_NEAR(x[0], 5.0, 1e-15);
  EXPECT_NEAR(y[0], 0.0, 1e-15);
}

TEST(GivensTest, ZeroSecondEntryIsIdentity) {
  const auto g = compute_givens(2.5, 0.0);
  EXPECT_EQ(g.c, 1.0);
  EXPECT_EQ(g.s, 0.0);
  // Negative pivot flips sign so the result stays |a|.
  const auto n = compute_givens(-2.5, 0.0);
  double x[] = {-2.5};
  double y[] = {0.0};
  n.apply(x, y);
  EXPECT_EQ(x[0], 2.5);
}

TEST(GivensTest, DegeneratePairThrows) { EXPECT_THROW(compute_givens(0.0, 0.0), DegeneratePair); }

TEST(GivensTest, RandomPairsAnnihilate) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 10000; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    const auto g = compute_givens(a, b);
    ASSERT_NEAR(g.c * g.c + g.s * g.s, 1.0, 1e-12);
    double x[] = {a};
    double y[] = {b};
    g.apply(x, y);
    ASSERT_NEAR(x[0], std::sqrt(a * a + b * b), 1e-12);
    ASSERT_NEAR(y[0], 0.0, 1e-12);
  }
}

TEST(HyperbolicTest, FiveThreeFour) {
  const auto h = compute_hyperbolic(5.0, 3.0);
  double x[] = {5.0};
  double y[] = {3.0};
  h.apply(x, y);
  EXPECT_NEAR(x[0], 4.0, 1e-15);
  EXPECT_NEAR(y[0], 0.0, 1e-15);
  EXPECT_NEAR(h.ch * h.ch - h.sh * h.sh, 1.0, 1e-12);
  EXPECT_GE(h.ch, 1.0);
}

TEST(HyperbolicTest, ZeroSecondEntryIsIdentity) {
  const auto h = compute_hyperbolic(1.7, 0.0);
  EXPECT_EQ(h.ch, 1.0);
  EXPECT_EQ(h.sh, 0.0);
}

TEST(HyperbolicTest, BreakdownWhenPivotDoesNotDominate) {
  EXPECT_THROW(compute_hyperbolic(3.0, 5.0), HyperbolicBreakdown);
  EXPECT_THROW(compute_hyperbolic(2.0, -2.0), HyperbolicBreakdown);
  // a^2 - b^2 below 1e-14 * a^2 is round-off.
  EXPECT_THROW(compute_hyperbolic(1.0, 1.0 - 1e-16), HyperbolicBreakdown);
  EXPECT_NO_THROW(compute_hyperbolic(1.0, 1.0 - 1e-6));
}

TEST(HyperbolicTest, RandomPairsPreserveIndefiniteNorm) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double a = 1.0 + 3.0 * std::fabs(u(rng));
    const double b = a * 0.999 * u(rng);
    const auto h = compute_hyperbolic(a, b);
    ASSERT_NEAR(h.ch * h.ch - h.sh * h.sh, 1.0, 1e-9 * h.ch * h.ch);
    double x[] = {a, u(rng)};
    double y[] = {b, u(rng)};
    const double before = x[1] * x[1] - y[1] * y[1];
    h.apply(x, y);
    ASSERT_NEAR(x[0], std::sqrt(a * a - b * b), 1e-12 * a);
    ASSERT_NEAR(y[0], 0.0, 1e-12 * a);
    ASSERT_NEAR(x[1] * x[1] - y[1] * y[1], before, 1e-9 * h.ch * h.ch);
  }
}

TEST(TransformTest, IdentityWhenRowZeroIsUnit) {
  std::mt19937_64 rng(3);
  auto a = random_pre_array(6, rng);
  a(0, 0) = 1.0;
  a(0, 1) = 0.0;
  a(0, 2) = 0.0;
  const auto b = apply_transform(a);
  EXPECT_EQ(to_eigen(a), to_eigen(b));
}

TEST(TransformTest, FirstFastStepForUnitWindow) {
  // M = 1, alpha = 1, window [1]: x~ = [1, 0], Lambda = I_2.
  TransformArray<double> a(3);
  a(0, 0) = 1.0;
  a(0, 1) = 1.0;  // x~^T Lambda(:, 0)
  a(0, 2) = 0.0;  // x~^T Lambda(:, 1)
  a(1, 1) = 1.0;
  a(2, 2) = 1.0;
  const auto b = apply_transform(a);
  EXPECT_NEAR(b(0, 0), std::sqrt(2.0), 1e-15);
  // rho_0 = A_{-1}^{-1} x_0 / sqrt(eta_0) = 1 / sqrt(2)
  EXPECT_NEAR(b(1, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b(2, 0), 0.0, 1e-15);
}

TEST(TransformTest, ThetaCongruenceAndAnnihilation) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t dim = 1 + i % 12;
    const auto pre = random_pre_array(dim, rng);
    const auto post = apply_transform(pre);
    const Eigen::MatrixXd b = to_eigen(pre);
    const Eigen::MatrixXd bt = to_eigen(post);
    const Eigen::MatrixXd lhs = bt * kTheta * bt.transpose();
    const Eigen::MatrixXd rhs = b * kTheta * b.transpose();
    ASSERT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
    ASSERT_LE(std::fabs(post(0, 1)), 1e-12);
    ASSERT_LE(std::fabs(post(0, 2)), 1e-12);
    ASSERT_GT(post(0, 0), 0.0);
  }
}

TEST(TransformTest, RotationsTouchOnlyTheirColumnPairs) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto pre = random_pre_array(7, rng);
    auto post = pre;
    const auto pair = apply_transform_in_place(post);

    // Givens acts on columns (0, 1) only: row norms there are preserved and
    // column 2 is untouched by it.
    auto mid = pre;
    pair.givens.apply(mid.col(0), mid.col(1));
    for (std::size_t r = 0; r < pre.rows(); ++r) {
      ASSERT_NEAR(std::hypot(mid(r, 0), mid(r, 1)), std::hypot(pre(r, 0), pre(r, 1)), 1e-12);
      ASSERT_EQ(mid(r, 2), pre(r, 2));
    }
    // Hyperbolic acts on columns (0, 2) only and keeps x^2 - y^2 per row.
    auto last = mid;
    pair.hyperbolic.apply(last.col(0), last.col(2));
    for (std::size_t r = 0; r < pre.rows(); ++r) {
      ASSERT_NEAR(last(r, 0) * last(r, 0) - last(r, 2) * last(r, 2),
                  mid(r, 0) * mid(r, 0) - mid(r, 2) * mid(r, 2), 1e-10);
      ASSERT_EQ(last(r, 1), mid(r, 1));
    }
    for (std::size_t r = 1; r < pre.rows(); ++r)
      for (std::size_t c = 0; c < 3; ++c) ASSERT_NEAR(last(r, c), post(r, c), 1e-14);
  }
}

TEST(TransformTest, PropagatesBreakdown) {
  TransformArray<double> a(4);
  a(0, 0) = 1.0;
  a(0, 2) = 2.0;
  EXPECT_THROW(apply_transform_in_place(a), HyperbolicBreakdown);
}

TEST(TransformTest, FloatVariantAnnihilates) {
  TransformArray<float> a(5);
  a(0, 0) = 1.5f;
  a(0, 1) = 0.5f;
  a(0, 2) = 0.75f;
  a(2, 0) = 0.3f;
  a(3, 1) = -0.2f;
  apply_transform_in_place(a);
  EXPECT_EQ(a(0, 1), 0.0f);
  EXPECT_EQ(a(0, 2), 0.0f);
  EXPECT_NEAR(a(0, 0), std::sqrt(1.5 * 1.5 + 0.25 - 0.5625), 1e-6);
}

}  // namespace
}  // namespace fons

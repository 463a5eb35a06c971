#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fons/errors.h"
#include "fons/predictors.h"
#include "oracles.h"

namespace fons {
namespace {

using testing::DirectInverse;
using testing::random_walk;

HyperParams params(std::size_t dim, double mu, double alpha = 1.0, double eps = 1e-8) {
  return HyperParams{dim, mu, alpha, eps};
}

Eigen::MatrixXd a_inv_of(const Ons<double>& ons) {
  const auto n = static_cast<Eigen::Index>(ons.feature_dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      m(r, c) = ons.a_inv(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

// ---------------------------------------------------------------- OGD

TEST(OgdTest, SingleStepExample) {
  Ogd<double> ogd(params(1, 10.0));
  ogd.prime(1.0);
  const auto out = ogd.step(2.0);
  EXPECT_EQ(out.prediction, 0.0);
  EXPECT_EQ(out.error, 2.0);
  EXPECT_TRUE(out.updated);
  EXPECT_NEAR(ogd.weights()[0], 0.1, 1e-15);
}

TEST(OgdTest, ZeroWindowLeavesWeights) {
  Ogd<double> ogd(params(3, 1.0));
  ogd.prime(0.0);
  ogd.step(5.0);
  for (double w : ogd.weights()) EXPECT_EQ(w, 0.0);
}

TEST(OgdTest, ErrorInsideThresholdSkipsUpdate) {
  Ogd<double> ogd(params(2, 1.0, 1.0, 0.5));
  ogd.prime(1.0);
  const auto out = ogd.step(0.4);
  EXPECT_FALSE(out.updated);
  EXPECT_EQ(ogd.weights()[0], 0.0);
}

// ---------------------------------------------------------------- ONS

TEST(OnsTest, ScalarExample) {
  Ons<double> ons(params(1, 1.0));
  ons.prime(1.0);
  const auto out = ons.step(2.0);
  EXPECT_EQ(out.error, 2.0);
  EXPECT_NEAR(ons.last_eta(), 2.0, 1e-15);
  EXPECT_NEAR(ons.a_inv(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(ons.weights()[0], 0.5, 1e-15);
}

TEST(OnsTest, TwoDimensionalInverse) {
  Ons<double> ons(params(2, 1.0));
  ons.prime(1.0);
  ons.step(1.0);  // window [1, 0]
  ons.step(0.0);  // window [1, 1]: A = I + e0 e0^T + 1 1^T
  // The second step saw x = [1, 1] against A^{-1} = diag(1/2, 1).
  DirectInverse direct(2, 1.0);
  const double x0[] = {1.0, 0.0};
  const double x1[] = {1.0, 1.0};
  direct.add(x0);
  direct.add(x1);
  EXPECT_LE((a_inv_of(ons) - direct.inverse()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(OnsTest, ZeroWindowUpdatesNothing) {
  Ons<double> ons(params(4, 0.5));
  ons.prime(0.0);
  const auto out = ons.step(3.0);
  EXPECT_TRUE(out.updated);
  EXPECT_EQ(ons.last_eta(), 1.0);
  for (double w : ons.weights()) EXPECT_EQ(w, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(ons.a_inv(i, j), i == j ? 1.0 : 0.0);
}

TEST(OnsTest, InversionLemmaMatchesDirectInverse) {
  for (std::size_t m : {1u, 2u, 5u, 8u}) {
    const auto s = random_walk(1001, 10 + m);
    Ons<double> ons(params(m, 0.7, 2.0));
    DirectInverse direct(m, 2.0);
    testing::NaiveWindow window(m);
    ons.prime(s[0]);
    window.push(s[0]);
    for (std::size_t t = 1; t < s.size(); ++t) {
      direct.add(window.values());
      ons.step(s[t]);
      window.push(s[t]);
      if (t % 50 == 0 || t + 1 == s.size()) {
        ASSERT_LE((a_inv_of(ons) - direct.inverse()).cwiseAbs().maxCoeff(), 1e-9)
            << "M=" << m << " t=" << t;
      }
    }
  }
}

TEST(OnsTest, InverseStaysSymmetricPositiveDefinite) {
  const auto s = random_walk(500, 3);
  Ons<double> ons(params(6, 0.1));
  ons.prime(s[0]);
  for (std::size_t t = 1; t < s.size(); ++t) {
    ons.step(s[t]);
    const Eigen::MatrixXd a = a_inv_of(ons);
    ASSERT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_EQ(Eigen::LLT<Eigen::MatrixXd>(a).info(), Eigen::Success);
    ASSERT_GT(ons.last_eta(), 1.0 - 1e-12);
  }
}

TEST(OnsTest, BiasAddsConstantFeature) {
  Ons<double> ons(params(2, 1.0), OnsOptions{.bias = true});
  EXPECT_EQ(ons.feature_dim(), 3u);
  ons.prime(0.0);
  // Zero window: only the bias feature is active, so A^{-1}(2,2) = 1/2.
  ons.step(1.0);
  EXPECT_NEAR(ons.a_inv(2, 2), 0.5, 1e-15);
  EXPECT_NEAR(ons.weights()[2], 0.5, 1e-15);
  EXPECT_NEAR(ons.predict_next(), 0.5, 1e-15);
}

// ---------------------------------------------------------------- Fast ONS

TEST(FastOnsTest, ColdStartIsIdentityScaled) {
  FastOns<double> fast(params(3, 1.0, 4.0));
  EXPECT_EQ(fast.sqrt_eta(), 1.0);
  for (double r : fast.rho()) EXPECT_EQ(r, 0.0);
  EXPECT_EQ(fast.lambda(0, 0), 0.5);
  EXPECT_EQ(fast.lambda(3, 1), 0.5);
  for (std::size_t r = 0; r < 4; ++r) {
    if (r != 0) EXPECT_EQ(fast.lambda(r, 0), 0.0);
    if (r != 3) EXPECT_EQ(fast.lambda(r, 1), 0.0);
  }
}

TEST(FastOnsTest, ScalarExample) {
  FastOns<double> fast(params(1, 1.0));
  fast.prime(1.0);
  const auto out = fast.step(2.0);
  EXPECT_EQ(out.error, 2.0);
  EXPECT_NEAR(fast.eta(), 2.0, 1e-15);
  EXPECT_NEAR(fast.weights()[0], 0.5, 1e-15);
}

TEST(FastOnsTest, TrajectoryMatchesRegular) {
  for (double mu : {1.0, 0.05}) {
    const auto s = random_walk(1000, 21);
    Ons<double> ons(params(8, mu));
    FastOns<double> fast(params(8, mu));
    ons.prime(s[0]);
    fast.prime(s[0]);
    for (std::size_t t = 1; t < s.size(); ++t) {
      const auto a = ons.step(s[t]);
      const auto b = fast.step(s[t]);
      ASSERT_NEAR(a.prediction, b.prediction, 1e-9) << "t=" << t;
      ASSERT_NEAR(ons.last_eta(), fast.eta(), 1e-10 * ons.last_eta()) << "t=" << t;
      ASSERT_LE(max_abs_diff(ons.weights(), fast.weights()), 1e-9) << "t=" << t;
    }
    EXPECT_EQ(fast.breakdowns(), 0u);
  }
}

TEST(FastOnsTest, RankTwoFactorReconstructsInverseDifference) {
  for (std::size_t m : {1u, 3u, 8u}) {
    const auto s = random_walk(501, 30 + m, 0.2);
    Ons<double> ons(params(m, 0.3, 0.5));
    FastOns<double> fast(params(m, 0.3, 0.5));
    ons.prime(s[0]);
    fast.prime(s[0]);
    const auto n = static_cast<Eigen::Index>(m);
    for (std::size_t t = 1; t < s.size(); ++t) {
      const Eigen::MatrixXd before = a_inv_of(ons);
      const auto x = ons.window().values();
      const Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
      ons.step(s[t]);
      fast.step(s[t]);
      const Eigen::MatrixXd after = a_inv_of(ons);

      Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(n + 1, n + 1);
      expected.topLeftCorner(n, n) += after;
      expected.bottomRightCorner(n, n) -= before;
      Eigen::MatrixXd lambda(n + 1, 2);
      for (Eigen::Index r = 0; r <= n; ++r)
        for (Eigen::Index c = 0; c < 2; ++c)
          lambda(r, c) = fast.lambda(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      const Eigen::MatrixXd got =
          lambda * Eigen::Vector2d(1, -1).asDiagonal() * lambda.transpose();
      ASSERT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-9) << "M=" << m << " t=" << t;

      const Eigen::VectorXd rho = before * xv / std::sqrt(ons.last_eta());
      for (Eigen::Index i = 0; i < n; ++i)
        ASSERT_NEAR(fast.rho()[static_cast<std::size_t>(i)], rho(i), 1e-9);
      ASSERT_LE(std::fabs(fast.tail_residual()), 1e-9);
    }
  }
}

TEST(FastOnsTest, EpsilonThresholdFreezesWeightsBitwise) {
  const auto s = random_walk(200, 5, 0.01);
  FastOns<double> fast(params(4, 1.0, 1.0, 10.0));
  Ons<double> ons(params(4, 1.0, 1.0, 10.0));
  fast.prime(s[0]);
  ons.prime(s[0]);
  for (std::size_t t = 1; t < s.size(); ++t) {
    const double eta_before = fast.eta();
    EXPECT_FALSE(fast.step(s[t]).updated);
    EXPECT_FALSE(ons.step(s[t]).updated);
    if (t > 5) EXPECT_NE(fast.eta(), eta_before);
  }
  for (double w : fast.weights()) EXPECT_EQ(w, 0.0);
  for (double w : ons.weights()) EXPECT_EQ(w, 0.0);
}

TEST(FastOnsTest, FootprintGrowsLinearly) {
  for (std::size_t m : {8u, 64u, 512u}) {
    FastOns<double> fast(params(m, 1.0));
    EXPECT_EQ(fast.scalar_footprint(), m + 3 * (m + 2) + 2 * (m + 1));
  }
}

TEST(FastOnsTest, StateRoundTrip) {
  const auto s = random_walk(300, 8);
  FastOns<double> a(params(5, 0.2));
  a.prime(s[0]);
  for (std::size_t t = 1; t < 150; ++t) a.step(s[t]);
  FastOns<double> b(params(5, 0.2), a.state());
  for (std::size_t t = 150; t < s.size(); ++t) {
    const auto x = a.step(s[t]);
    const auto y = b.step(s[t]);
    ASSERT_EQ(x.prediction, y.prediction);
  }
  EXPECT_EQ(max_abs_diff(a.weights(), b.weights()), 0.0);
}

FastOnsState<double> corrupted_state(const HyperParams& p, const std::vector<double>& s) {
  FastOns<double> warm(p);
  warm.prime(s[0]);
  for (std::size_t t = 1; t < s.size(); ++t) warm.step(s[t]);
  auto state = warm.state();
  // Lambda(:,0) = 0 and Lambda(:,1) = 10 x~ make the hyperbolic pivot lose.
  const auto ext = state.window.extended();
  const std::size_t rows = p.dim + 1;
  for (std::size_t r = 0; r < rows; ++r) {
    state.lambda[r] = 0.0;
    state.lambda[rows + r] = 10.0 * ext[r];
  }
  return state;
}

TEST(FastOnsTest, BreakdownRebuildsFromRetainedSamples) {
  const auto p = params(4, 0.5);
  const auto s = random_walk(40, 9, 0.5);
  const std::vector<double> head(s.begin(), s.begin() + 30);
  FastOns<double> fast(p, corrupted_state(p, head));
  fast.step(s[30]);
  EXPECT_EQ(fast.breakdowns(), 1u);

  // The rebuilt statistics are those of a cold learner fed x_{t-M} .. x_t.
  Ons<double> ons(p);
  ons.prime(s[25]);
  for (std::size_t t = 26; t <= 30; ++t) ons.step(s[t]);
  ons.step(s[31]);
  fast.step(s[31]);
  EXPECT_NEAR(fast.eta(), ons.last_eta(), 1e-10 * ons.last_eta());
  EXPECT_EQ(fast.breakdowns(), 1u);
}

TEST(FastOnsTest, AbortPolicyRethrows) {
  const auto p = params(4, 0.5);
  const auto s = random_walk(31, 9, 0.5);
  const std::vector<double> head(s.begin(), s.begin() + 30);
  FastOns<double> fast(p, corrupted_state(p, head), FastOnsOptions{BreakdownPolicy::kAbort});
  EXPECT_THROW(fast.step(s[30]), HyperbolicBreakdown);
}

TEST(FastOnsTest, FloatTracksDoubleStatistics) {
  // The weights follow sign(e), which can flip between precisions near
  // e = 0; eta depends on the data alone and must track closely.
  const auto s = random_walk(2000, 12);
  FastOns<double> d(params(8, 0.05));
  FastOns<float> f(params(8, 0.05));
  d.prime(s[0]);
  f.prime(static_cast<float>(s[0]));
  double worst = 0;
  for (std::size_t t = 1; t < s.size(); ++t) {
    d.step(s[t]);
    f.step(static_cast<float>(s[t]));
    worst = std::max(worst, std::fabs(d.eta() - f.eta()) / d.eta());
  }
  EXPECT_LT(worst, 1e-3);
}

// ---------------------------------------------------------------- protocol

TEST(ProtocolTest, PrimeOnlyOnFreshLearner) {
  Ogd<double> ogd(params(2, 1.0));
  Ons<double> ons(params(2, 1.0));
  FastOns<double> fast(params(2, 1.0));
  ogd.prime(1.0);
  ons.prime(1.0);
  fast.prime(1.0);
  EXPECT_THROW(ogd.prime(1.0), std::logic_error);
  EXPECT_THROW(ons.prime(1.0), std::logic_error);
  EXPECT_THROW(fast.prime(1.0), std::logic_error);
}

TEST(ProtocolTest, InvalidParametersRejected) {
  EXPECT_THROW(Ons<double>(params(0, 1.0)), InvalidParameter);
  EXPECT_THROW(FastOns<double>(params(4, 0.0)), InvalidParameter);
  EXPECT_THROW(Ogd<double>(params(4, 1.0, 1.0, -1.0)), InvalidParameter);
  EXPECT_THROW(FastOns<double>(params(4, 1.0, 0.0)), InvalidParameter);
}

}  // namespace
}  // namespace fons

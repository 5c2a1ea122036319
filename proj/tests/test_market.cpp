#include "fgp/diagnostics.hpp"
#include "fgp/errors.hpp"
#include "fgp/genfun.hpp"
#include "fgp/market.hpp"
#include "fgp/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace fgp;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST(SimplexPoint, AcceptsValidWeights) {
  const SimplexPoint p{0.2, 0.3, 0.5};
  EXPECT_EQ(p.dim(), 3u);
  EXPECT_DOUBLE_EQ(p[1], 0.3);
}

TEST(SimplexPoint, RejectsBadInput) {
  EXPECT_THROW(SimplexPoint({1.0}), DomainError);
  EXPECT_THROW(SimplexPoint({0.0, 1.0}), DomainError);
  EXPECT_THROW(SimplexPoint({-0.1, 1.1}), DomainError);
  EXPECT_THROW(SimplexPoint({0.5, 0.6}), DomainError);
  EXPECT_THROW(SimplexPoint({NAN, 0.5}), DomainError);
}

TEST(SimplexPoint, RenormalizesSmallDriftWithWarning) {
  std::vector<std::string> seen;
  ScopedWarningHandler guard([&](std::string_view m) { seen.emplace_back(m); });
  const SimplexPoint p{0.5 + 5e-10, 0.5};
  EXPECT_NEAR(p.weights().sum(), 1.0, 1e-15);
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_NE(seen[0].find("renormaliz"), std::string::npos);
}

TEST(SimplexPoint, Barycenter) {
  const auto b = SimplexPoint::barycenter(4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(b[i], 0.25);
}

TEST(TangentVector, SumMustVanish) {
  EXPECT_NO_THROW(TangentVector({1.0, -1.0, 0.0}));
  EXPECT_THROW(TangentVector({1.0, 0.0}), DomainError);
  const auto d = TangentVector::between(SimplexPoint{0.6, 0.4}, SimplexPoint{0.5, 0.5});
  EXPECT_NEAR(d.components()(0), 0.1, 1e-15);
}

TEST(MarketPath, UniformDimension) {
  EXPECT_THROW(MarketPath({}), DomainError);
  EXPECT_THROW(MarketPath({SimplexPoint{0.5, 0.5}, SimplexPoint{0.2, 0.3, 0.5}}), DimensionError);
  const MarketPath path({SimplexPoint{0.5, 0.5}, SimplexPoint{0.6, 0.4}, SimplexPoint{0.7, 0.3}});
  EXPECT_EQ(path.steps(), 2u);
  const auto tail = path.suffix(1);
  EXPECT_EQ(tail.size(), 2u);
  EXPECT_EQ(tail[0], path[1]);
}

TEST(MarketWeights, FromCaps) {
  const auto a = market_weights_from_caps(vec({2, 3, 5}));
  EXPECT_NEAR(a[0], 0.2, 1e-15);
  EXPECT_NEAR(a[1], 0.3, 1e-15);
  EXPECT_NEAR(a[2], 0.5, 1e-15);
  const auto b = market_weights_from_caps(vec({7, 7}));
  EXPECT_DOUBLE_EQ(b[0], 0.5);
}

TEST(MarketWeights, ZeroCapNamesIndex) {
  try {
    market_weights_from_caps(vec({1, 0, 2}));
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos);
  }
}

TEST(ValueStep, Examples) {
  const SimplexPoint half{0.5, 0.5}, moved{0.6, 0.4};
  EXPECT_DOUBLE_EQ(value_step(ShareVector{1, 1}, half, half, 1.0), 1.0);
  EXPECT_NEAR(value_step(ShareVector{2, 0}, half, moved, 1.0), 1.2, 1e-15);
  const SimplexPoint a{0.2, 0.3, 0.5}, b{0.4, 0.1, 0.5};
  EXPECT_NEAR(value_step(ShareVector{1, 1, 1}, a, b, 1.0), 1.0, 1e-15);
  EXPECT_THROW(value_step(ShareVector{1, 1, 1}, half, moved, 1.0), DimensionError);
}

TEST(ValueStep, ConstantSharesLeaveValueUnchanged) {
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_simplex_point(rng, 5);
    const auto b = random_simplex_point(rng, 5);
    const double c = -3.0 + 0.2 * k;
    EXPECT_NEAR(value_step(ShareVector(Vector::Constant(5, c)), a, b, 0.7), 0.7, 1e-14);
  }
}

TEST(WeightsFromStrategy, Examples) {
  const auto w1 = weights_from_strategy(ShareVector{1, 1, 1}, SimplexPoint::barycenter(3), 1.0);
  EXPECT_NEAR(w1(0), 1.0 / 3, 1e-15);
  const auto w2 = weights_from_strategy(ShareVector{2, 0}, SimplexPoint{0.5, 0.5}, 1.0);
  EXPECT_DOUBLE_EQ(w2(0), 1.0);
  EXPECT_DOUBLE_EQ(w2(1), 0.0);
  const auto w3 = weights_from_strategy(ShareVector{3, -1}, SimplexPoint{0.5, 0.5}, 1.0);
  EXPECT_DOUBLE_EQ(w3(0), 1.5);
  EXPECT_DOUBLE_EQ(w3(1), -0.5);
}

TEST(WeightsFromStrategy, Errors) {
  EXPECT_THROW(weights_from_strategy(ShareVector{1, 1}, SimplexPoint{0.5, 0.5}, 0.0), DomainError);
  EXPECT_THROW(weights_from_strategy(ShareVector{1, 1}, SimplexPoint{0.5, 0.5}, 2.0), SelfFinancingError);
}

TEST(ValueMultiplicative, Examples) {
  const MarketPath path({SimplexPoint{0.5, 0.5}, SimplexPoint{0.6, 0.4}});
  const std::vector<Vector> equal{vec({0.5, 0.5})};
  EXPECT_NEAR(value_multiplicative(path, equal, 1.0).series.back(), 1.0, 1e-15);
  const std::vector<Vector> single{vec({1.0, 0.0})};
  EXPECT_NEAR(value_multiplicative(path, single, 1.0).series.back(), 1.2, 1e-15);
}

TEST(ValueMultiplicative, MarketPortfolioHasConstantValue) {
  Rng rng(3);
  const auto path = random_market_path(rng, 4, 50, 0.1);
  std::vector<Vector> w;
  for (std::size_t t = 0; t < path.steps(); ++t) w.push_back(path[t].weights());
  const auto v = value_multiplicative(path, w, 2.5);
  for (double x : v.series.values) EXPECT_NEAR(x, 2.5, 1e-12);
  EXPECT_FALSE(v.nonpositive_at);
}

TEST(ValueMultiplicative, FlagsNonpositiveValue) {
  const MarketPath path({SimplexPoint{0.5, 0.5}, SimplexPoint{0.1, 0.9}, SimplexPoint{0.5, 0.5}});
  const std::vector<Vector> w{vec({3.0, -2.0}), vec({0.5, 0.5})};
  const auto v = value_multiplicative(path, w, 1.0);
  ASSERT_TRUE(v.nonpositive_at);
  EXPECT_EQ(*v.nonpositive_at, 1u);
  EXPECT_THROW(value_multiplicative(path, w, 0.0), DomainError);
  const std::vector<Vector> bad{vec({0.6, 0.6}), vec({0.5, 0.5})};
  EXPECT_THROW(value_multiplicative(path, bad, 1.0), DomainError);
}

TEST(ValueMultiplicative, AgreesWithAdditiveRecursion) {
  // shares eta_i = V pi_i / mu_i turn the multiplicative factor into value_step
  Rng rng(11);
  const auto path = random_market_path(rng, 3, 200, 0.05);
  const Vector pi = vec({0.2, 0.5, 0.3});
  std::vector<Vector> w(path.steps(), pi);
  const auto mult = value_multiplicative(path, w, 1.0);
  double v = 1.0;
  for (std::size_t t = 0; t < path.steps(); ++t) {
    const ShareVector eta(Vector(v * pi.cwiseQuotient(path[t].weights())));
    v = value_step(eta, path[t], path[t + 1], v);
    EXPECT_NEAR(v, mult.series[t + 1], 1e-10 * std::abs(v));
  }
}

TEST(ValueAdditive, StartsAtBookValue) {
  const MarketPath path({SimplexPoint{0.5, 0.5}, SimplexPoint{0.6, 0.4}});
  const std::vector<ShareVector> eta{ShareVector{2, 0}, ShareVector{1, 1}};
  const auto v = value_additive(eta, path);
  EXPECT_DOUBLE_EQ(v[0], 1.0);
  EXPECT_NEAR(v[1], 1.2, 1e-15);
}

class SelfFinancing : public ::testing::Test {
 protected:
  Rng rng{2024};
};

TEST_F(SelfFinancing, AlreadySelfFinancingIsUnchanged) {
  const auto path = random_market_path(rng, 3, 10, 0.05);
  std::vector<ShareVector> raw(path.size(), ShareVector{1, 1, 1});
  const auto q = self_financing_defect(raw, path);
  for (double x : q) EXPECT_NEAR(x, 0.0, 1e-12);
  const auto out = self_financing_correction(raw, path, 0.0);
  for (std::size_t t = 0; t < raw.size(); ++t) {
    EXPECT_LE((out[t].shares() - raw[t].shares()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST_F(SelfFinancing, GradientSharesAreCorrected) {
  const auto path = random_market_path(rng, 3, 3, 0.1);
  const auto phi = neg_half_sq_norm();
  std::vector<ShareVector> raw;
  for (const auto& mu : path) raw.emplace_back(phi.gradient(mu));
  EXPECT_GT(check_self_financing(raw, path), 1e-6);
  const auto out = self_financing_correction(raw, path, 0.0);
  EXPECT_LT(check_self_financing(out, path), 1e-10);
}

TEST_F(SelfFinancing, CorrectionPreservesReturnsForAnyRawInput) {
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 5;
    const auto path = random_market_path(rng, n, 30, 0.08);
    std::vector<ShareVector> raw;
    for (std::size_t t = 0; t < path.size(); ++t) {
      Vector x(static_cast<Eigen::Index>(n));
      for (auto& c : x) c = 3 * z(rng);
      raw.emplace_back(x);
    }
    const double C = 0.5 * trial - 3;
    const auto out = self_financing_correction(raw, path, C);
    EXPECT_LT(check_self_financing(out, path), 1e-10);
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      const Vector d = path[t + 1].weights() - path[t].weights();
      EXPECT_NEAR(out[t].shares().dot(d), raw[t].shares().dot(d), 1e-12);
    }
  }
}

TEST_F(SelfFinancing, PerturbationIsDetected) {
  const auto path = random_market_path(rng, 3, 5, 0.05);
  std::vector<ShareVector> eta(path.size(), ShareVector{1, 1, 1});
  EXPECT_EQ(check_self_financing(eta, path), 0.0);
  eta[2] = ShareVector{1.1, 1, 1};
  EXPECT_GE(check_self_financing(eta, path), 0.1 * path[3].weights().minCoeff());
}

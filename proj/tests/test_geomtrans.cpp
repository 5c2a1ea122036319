#include "fgp/errors.hpp"
#include "fgp/geomtrans.hpp"
#include "fgp/sampling.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace fgp;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

SimplexPoint offset(const SimplexPoint& q, std::initializer_list<double> d) {
  return SimplexPoint(Vector(q.weights() + vec(d)));
}

const SimplexPoint kHalf{0.5, 0.5};
const SimplexPoint kMoved{0.6, 0.4};

std::vector<GeneratingFunction> exp_concave(Rng& rng, std::size_t n) {
  return {cross_entropy_equal(n), cross_entropy(random_simplex_point(rng, n, 2.0).weights()),
          neg_half_sq_norm(), diversity(0.5)};
}

}  // namespace

TEST(TransportMap, Examples) {
  const Vector a = multiplicative_transport_map(cross_entropy_equal(2), kMoved);
  EXPECT_NEAR(a(0), 0.4, 1e-15);
  EXPECT_NEAR(a(1), 0.6, 1e-15);
  const Vector b = multiplicative_transport_map(cross_entropy_equal(3), SimplexPoint::barycenter(3));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(b(i), 1.0 / 3, 1e-15);
  const Vector c = multiplicative_transport_map(neg_half_sq_norm(), kMoved);
  EXPECT_NEAR(c(0), 0.92 / 2.04, 1e-15);
  EXPECT_NEAR(c(0), 0.45098, 1e-5);
  EXPECT_NEAR(c(1), 0.54902, 1e-5);
}

TEST(Cost, Definitions) {
  EXPECT_NEAR(CostFunction::log_dot()(kMoved.weights(), vec({0.4, 0.6})), std::log(0.48), 1e-15);
  EXPECT_DOUBLE_EQ(CostFunction::inner_product()(kMoved.weights(), vec({-1, 2})), 0.2);
  EXPECT_THROW(CostFunction::log_dot()(kMoved.weights(), vec({-1, 0})), DomainError);
}

TEST(CyclicalMonotonicity, LogDotTwoPointExample) {
  const TransportSample s({kHalf, kMoved}, {vec({0.5, 0.5}), vec({0.4, 0.6})});
  const auto r = check_cyclical_monotonicity(CostFunction::log_dot(), s, 2);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.cycles_checked, 1u);
  EXPECT_NEAR(r.worst_slack, std::log(0.25) - std::log(0.24), 1e-15);
}

TEST(CyclicalMonotonicity, InnerProductExampleAndSwap) {
  const auto phi = neg_half_sq_norm();
  const auto s = generated_sample(CostFunction::inner_product(), phi, {kHalf, kMoved});
  const auto r = check_cyclical_monotonicity(CostFunction::inner_product(), s, 2);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.worst_slack, -1.0 - (-1.02), 1e-15);
  const TransportSample swapped({kHalf, kMoved}, {s.targets[1], s.targets[0]});
  const auto bad = check_cyclical_monotonicity(CostFunction::inner_product(), swapped, 2);
  EXPECT_FALSE(bad.passed);
  EXPECT_LT(bad.worst_slack, 0.0);
}

TEST(CyclicalMonotonicity, CycleCountMatchesCombinatorics) {
  Rng rng(1);
  std::vector<SimplexPoint> xs;
  for (int k = 0; k < 6; ++k) xs.push_back(random_simplex_point(rng, 3));
  const auto s = generated_sample(CostFunction::log_dot(), cross_entropy_equal(3), xs);
  const auto r = check_cyclical_monotonicity(CostFunction::log_dot(), s, 5);
  // directed cycles of length k on 6 labels: C(6,k) (k-1)!
  EXPECT_EQ(r.cycles_checked, 15u * 1 + 20u * 2 + 15u * 6 + 6u * 24);
  EXPECT_TRUE(r.passed);
  EXPECT_THROW(check_cyclical_monotonicity(CostFunction::log_dot(), s, 7), DomainError);
}

TEST(CyclicalMonotonicity, GeneratedMapsPassAllCyclesToFive) {
  Rng rng(2);
  for (std::size_t n : {2u, 3u, 4u}) {
    for (const auto& phi : exp_concave(rng, n)) {
      std::vector<SimplexPoint> xs;
      for (int k = 0; k < 8; ++k) xs.push_back(random_simplex_point(rng, n, 1.0, 0.01));
      for (const auto& cost : {CostFunction::log_dot(), CostFunction::inner_product()}) {
        const auto r = check_cyclical_monotonicity(cost, generated_sample(cost, phi, xs), 5);
        EXPECT_TRUE(r.passed) << phi.name() << " slack " << r.worst_slack;
      }
    }
  }
}

TEST(BruteForce, SmallCases) {
  const auto one = brute_force_assignment(CostFunction::log_dot(), {kHalf}, {vec({0.5, 0.5})});
  EXPECT_EQ(one.permutation, std::vector<std::size_t>{0});
  const auto two = brute_force_assignment(CostFunction::log_dot(), {kHalf, kMoved},
                                          {vec({0.5, 0.5}), vec({0.4, 0.6})});
  EXPECT_EQ(two.permutation, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(two.cost, std::log(0.24), 1e-15);
  EXPECT_TRUE(two.identity_optimal);
  std::vector<SimplexPoint> nine(9, kHalf);
  std::vector<Vector> t9(9, vec({0.5, 0.5}));
  EXPECT_THROW(brute_force_assignment(CostFunction::log_dot(), nine, t9), DomainError);
}

TEST(BruteForce, FindsPlantedOptimum) {
  // targets listed in reverse order of the generated map: optimum is the reversal
  Rng rng(3);
  std::vector<SimplexPoint> xs;
  for (int k = 0; k < 5; ++k) xs.push_back(random_simplex_point(rng, 3));
  auto s = generated_sample(CostFunction::inner_product(), diversity(0.5), xs);
  std::reverse(s.targets.begin(), s.targets.end());
  const auto a = brute_force_assignment(CostFunction::inner_product(), s.sources, s.targets);
  EXPECT_EQ(a.permutation, (std::vector<std::size_t>{4, 3, 2, 1, 0}));
  EXPECT_FALSE(a.identity_optimal);
}

TEST(BruteForce, GeneratedMapsAreOptimal) {
  Rng rng(4);
  for (std::size_t N : {5u, 6u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial) % 3;
      for (const auto& phi : exp_concave(rng, n)) {
        std::vector<SimplexPoint> xs;
        for (std::size_t k = 0; k < N; ++k) xs.push_back(random_simplex_point(rng, n, 1.0, 0.01));
        for (const auto& cost : {CostFunction::log_dot(), CostFunction::inner_product()}) {
          const auto s = generated_sample(cost, phi, xs);
          EXPECT_TRUE(brute_force_assignment(cost, s.sources, s.targets).identity_optimal) << phi.name();
        }
      }
    }
  }
}

TEST(DualChart, Examples) {
  const DualChart q(neg_half_sq_norm());
  const Vector d = q.dual_coordinates(kMoved);
  EXPECT_DOUBLE_EQ(d(0), -0.6);
  EXPECT_DOUBLE_EQ(d(1), -0.4);
  const DualChart ce(cross_entropy_equal(2));
  const Vector e = ce.dual_coordinates(kHalf);
  EXPECT_NEAR(e(0), 1.0, 1e-15);
  EXPECT_NEAR(e(1), 1.0, 1e-15);
  EXPECT_THROW(DualChart(cross_entropy(vec({1, 0}))), DomainError);
}

TEST(DualChart, RoundTrip) {
  Rng rng(5);
  for (std::size_t n : {2u, 3u, 5u}) {
    for (const auto& phi : exp_concave(rng, n)) {
      const DualChart chart(phi);
      for (int k = 0; k < 50; ++k) {
        const auto p = random_simplex_point(rng, n, 1.0, 0.02);
        const auto back = chart.primal_from_dual(chart.dual_coordinates(p));
        EXPECT_LE((back.weights() - p.weights()).cwiseAbs().maxCoeff(), 1e-9) << phi.name();
      }
    }
  }
}

TEST(DualChart, NewtonAgreesWithClosedForm) {
  Rng rng(6);
  for (std::size_t n : {2u, 4u}) {
    for (const auto& phi : {cross_entropy_equal(n), neg_half_sq_norm()}) {
      ASSERT_TRUE(phi.has_analytic_inverse_gradient());
      const DualChart chart(phi);
      for (int k = 0; k < 30; ++k) {
        const auto p = random_simplex_point(rng, n, 1.0, 0.02);
        const Vector y = chart.dual_coordinates(p);
        EXPECT_LE((chart.newton_inverse(y) - *phi.inverse_gradient(y)).cwiseAbs().maxCoeff(), 1e-10);
      }
    }
  }
}

TEST(DualChart, InverseJacobianMatchesFiniteDifferences) {
  const DualChart chart(diversity(0.5));
  const SimplexPoint q{0.2, 0.3, 0.5};
  const Matrix j = chart.inverse_jacobian(q);
  const Vector y = chart.dual_coordinates(q);
  for (Eigen::Index c = 0; c < 3; ++c) {
    Vector e = Vector::Zero(3);
    e(c) = 1e-6;
    const Vector col = (chart.newton_inverse(y + e) - chart.newton_inverse(y - e)) / 2e-6;
    EXPECT_LE((col - j.col(c)).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(InnerProduct, Examples) {
  EXPECT_NEAR(riemannian_inner_product(neg_half_sq_norm(), SimplexPoint::barycenter(3), TangentVector{1, -1, 0},
                                       TangentVector{0.5, 0.5, -1}),
              0.0, 1e-15);
  EXPECT_NEAR(riemannian_inner_product(cross_entropy_equal(3), SimplexPoint::barycenter(3), TangentVector{1, -1, 0},
                                       TangentVector{1, -1, 0}),
              6.0, 1e-14);
  EXPECT_EQ(riemannian_inner_product(diversity(0.5), SimplexPoint::barycenter(3), TangentVector{0, 0, 0},
                                     TangentVector{1, -1, 0}),
            0.0);
}

TEST(InnerProduct, SymmetricAndPositive) {
  Rng rng(7);
  for (const auto& phi : exp_concave(rng, 4)) {
    for (int k = 0; k < 30; ++k) {
      const auto p = random_simplex_point(rng, 4, 1.0, 0.05);
      const auto u = random_unit_tangent(rng, 4);
      const auto v = random_unit_tangent(rng, 4);
      EXPECT_NEAR(riemannian_inner_product(phi, p, u, v), riemannian_inner_product(phi, p, v, u), 1e-10);
      EXPECT_GT(riemannian_inner_product(phi, p, u, u), 0.0);
    }
  }
}

TEST(Pythagorean, EqualityTriplet) {
  const auto q = SimplexPoint::barycenter(3);
  const auto p = offset(q, {0.1, -0.1, 0});
  const auto r = offset(q, {0.05, 0.05, -0.1});
  const auto res = pythagorean_check(neg_half_sq_norm(), p, q, r);
  // half squared distances: |r-q|^2 = 0.015, |q-p|^2 = 0.02, |r-p|^2 = 0.035
  EXPECT_NEAR(res.d_rq, 0.0075, 1e-15);
  EXPECT_NEAR(res.d_qp, 0.01, 1e-15);
  EXPECT_NEAR(res.d_rp, 0.0175, 1e-15);
  EXPECT_NEAR(res.delta, 0.0, 1e-12);
  EXPECT_NEAR(res.angle_term, 0.0, 1e-12);
  EXPECT_TRUE(res.equality);
  EXPECT_TRUE(res.signs_agree);
}

TEST(Pythagorean, AcuteAndObtuse) {
  const auto q = SimplexPoint::barycenter(3);
  const auto p = offset(q, {0.1, -0.1, 0});
  const auto acute = pythagorean_check(neg_half_sq_norm(), p, q, offset(q, {0.05, -0.05, 0}));
  EXPECT_NEAR(acute.delta, 0.01, 1e-15);
  EXPECT_GT(acute.angle_term, 0.0);
  EXPECT_TRUE(acute.inequality_holds);
  EXPECT_TRUE(acute.signs_agree);
  const auto obtuse = pythagorean_check(neg_half_sq_norm(), p, q, offset(q, {-0.05, 0.05, 0}));
  EXPECT_NEAR(obtuse.delta, -0.01, 1e-15);
  EXPECT_LT(obtuse.angle_term, 0.0);
  EXPECT_FALSE(obtuse.inequality_holds);
  EXPECT_TRUE(obtuse.signs_agree);
  EXPECT_THROW(pythagorean_check(neg_half_sq_norm(), p, q, q), DomainError);
}

TEST(Pythagorean, RandomTripletsNegHalf) {
  Rng rng(8);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k) % 5;
    const auto res = pythagorean_check(neg_half_sq_norm(), random_simplex_point(rng, n),
                                       random_simplex_point(rng, n), random_simplex_point(rng, n));
    EXPECT_TRUE(res.signs_agree);
    EXPECT_NEAR(res.delta, res.angle_term, 1e-12);
    EXPECT_NEAR(res.swapped_angle_term, res.angle_term, 1e-12);
  }
}

TEST(Pythagorean, NonQuadraticGeometry) {
  // delta = (r - q) . (q* - p*) exactly; the swapped pairing only agrees to second order
  Rng rng(9);
  const auto phi = cross_entropy_equal(3);
  for (int k = 0; k < 200; ++k) {
    const auto p = random_simplex_point(rng, 3, 2.0);
    const auto q = random_simplex_point(rng, 3, 2.0);
    const auto r = random_simplex_point(rng, 3, 2.0);
    const auto res = pythagorean_check(phi, p, q, r);
    const double oracle = (r.weights() - q.weights()).dot(phi.gradient(q) - phi.gradient(p));
    EXPECT_NEAR(res.delta, oracle, 1e-12 * std::max(1.0, std::abs(oracle)));
    EXPECT_NEAR(res.angle_term, res.delta, 1e-10 * std::max(1.0, std::abs(res.delta)));
    EXPECT_TRUE(res.signs_agree);
  }
  const auto q = SimplexPoint::barycenter(3);
  const auto near = pythagorean_check(phi, offset(q, {1e-3, -1e-3, 0}), q, offset(q, {1e-3, 0, -1e-3}));
  EXPECT_NEAR(near.swapped_angle_term / near.delta, 1.0, 1e-2);
}

TEST(Rebalancing, Examples) {
  const auto q = SimplexPoint::barycenter(3);
  const auto p = offset(q, {0.1, -0.1, 0});
  const auto s = GenerationScheme::additive(neg_half_sq_norm(), 1.0);
  const auto tie = rebalancing_comparison(s, p, q, offset(q, {0.05, 0.05, -0.1}));
  EXPECT_EQ(tie.better, Better::Tie);
  EXPECT_NEAR(tie.value_b - tie.value_a, 0.0, 1e-12);
  const auto acute = rebalancing_comparison(s, p, q, offset(q, {0.05, -0.05, 0}));
  EXPECT_EQ(acute.better, Better::B);
  EXPECT_NEAR(acute.value_b - acute.value_a, 0.01, 1e-12);
  const auto round = rebalancing_comparison(s, p, q, p);
  EXPECT_NEAR(round.value_b - round.value_a,
              bregman(neg_half_sq_norm(), p, q) + bregman(neg_half_sq_norm(), q, p), 1e-12);
  EXPECT_THROW(rebalancing_comparison(GenerationScheme::multiplicative(neg_half_sq_norm()), p, q, p), DomainError);
}

TEST(Rebalancing, ConsistentWithPythagorean) {
  Rng rng(10);
  for (const auto& phi : exp_concave(rng, 3)) {
    const auto s = GenerationScheme::additive(phi, 1.0);
    for (int k = 0; k < 100; ++k) {
      const auto p = random_simplex_point(rng, 3, 1.0, 0.05);
      const auto q = random_simplex_point(rng, 3, 1.0, 0.05);
      const auto r = random_simplex_point(rng, 3, 1.0, 0.05);
      const auto cmp = rebalancing_comparison(s, p, q, r);
      const auto pyth = pythagorean_check(phi, p, q, r);
      EXPECT_NEAR(cmp.value_b - cmp.value_a, pyth.delta, 1e-12);
      if (std::abs(pyth.delta) > 1e-10) EXPECT_EQ(cmp.better == Better::B, pyth.delta > 0);
    }
  }
}

TEST(ScaleOde, Examples) {
  EXPECT_NEAR(scale_ode_residual(shifted_log_scale(1, 1, 0), 2.0), 0.0, 1e-15);
  EXPECT_EQ(scale_ode_residual(affine_scale(1, 0), 3.0), 0.0);
  EXPECT_DOUBLE_EQ(scale_ode_residual(square_foil(), 1.0), -8.0);
  EXPECT_NEAR(scale_ode_residual(exp_foil(), 1.0), -std::exp(2.0), 1e-12);
  EXPECT_NEAR(scale_ode_residual(sqrt_foil(), 1.0), 1.0 / 16, 1e-15);
}

TEST(ScaleOde, AdmittedFamiliesVanish) {
  for (double c1 : {0.1, 1.0, 5.0}) {
    for (double c2 : {-2.0, 0.0, 3.0}) {
      for (double x : {0.01, 0.5, 1.0, 7.0, 100.0}) {
        EXPECT_LT(std::abs(scale_ode_residual(affine_scale(c1, c2), x)), 1e-8);
      }
    }
  }
  for (double c1 : {0.0, 0.3, 1.0, 10.0}) {
    for (double c2 : {0.2, 1.0, 4.0}) {
      for (double x : {0.1, 0.5, 1.0, 7.0, 100.0}) {
        EXPECT_LT(std::abs(scale_ode_residual(shifted_log_scale(c1, c2, -1.0), x)), 1e-8);
      }
    }
  }
}

TEST(ScaleOde, FoilsBoundedAwayFromZero) {
  for (const auto& g : {square_foil(), exp_foil(), sqrt_foil()}) {
    EXPECT_GE(std::abs(scale_ode_residual(g, 1.0)), 1.0 / 32) << g.name;
  }
}

TEST(ScaleOde, FiniteDifferenceFallback) {
  const auto g = numeric_scale("log1p", [](double x) { return std::log1p(x); });
  EXPECT_NEAR(scale_ode_residual(g, 2.0), 0.0, 1e-5);
  const auto sq = numeric_scale("square", [](double x) { return x * x; });
  EXPECT_NEAR(scale_ode_residual(sq, 1.0), -8.0, 1e-4);
}

TEST(ScaleOde, RejectsNonIncreasing) {
  EXPECT_THROW(scale_ode_residual(affine_scale(-1, 0), 1.0), DomainError);
  EXPECT_THROW(scale_ode_residual(affine_scale(1, 0), 0.0), DomainError);
}

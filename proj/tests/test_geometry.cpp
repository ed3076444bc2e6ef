#include <gtest/gtest.h>

#include <cmath>

#include "hsvm/error.hpp"
#include "hsvm/geometry.hpp"
#include "test_util.hpp"

using namespace hsvm;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST(Minkowski, Examples) {
  EXPECT_DOUBLE_EQ(minkowski_inner(vec({1, 0, 0}), vec({1, 0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(minkowski_inner(vec({0, 1, 0}), vec({0, 1, 0})), -1.0);
  EXPECT_DOUBLE_EQ(minkowski_inner(vec({5.0 / 3, 4.0 / 3, 0}), vec({1, 0, 0})), 5.0 / 3);
}

TEST(Minkowski, LengthMismatchThrows) {
  EXPECT_THROW(minkowski_inner(vec({1, 0, 0}), vec({1, 0})), DimensionError);
  EXPECT_THROW(minkowski_inner(vec({1}), vec({1})), DimensionError);
}

TEST(Points, Validation) {
  EXPECT_THROW(HyperboloidPoint(vec({2, 0, 0})), ValidationError);
  EXPECT_THROW(HyperboloidPoint(vec({-1, 0, 0})), ValidationError);
  EXPECT_THROW(BallPoint(vec({1.0, 0.0})), ValidationError);
  EXPECT_THROW(HalfSpacePoint(vec({0.0, 1.0})), ValidationError);
  EXPECT_THROW(DecisionWeights(vec({1, 0, 0})), ValidationError);
  EXPECT_NO_THROW(DecisionWeights(vec({0, 1, 0})));
}

TEST(Conversions, HyperboloidToBallExamples) {
  EXPECT_TRUE(hyperboloid_to_ball(HyperboloidPoint(vec({1, 0, 0}))).coords().isApprox(vec({0, 0})));
  EXPECT_TRUE(hyperboloid_to_ball(HyperboloidPoint(vec({5.0 / 3, 4.0 / 3, 0}))).coords().isApprox(vec({0.5, 0})));
  EXPECT_TRUE(hyperboloid_to_ball(HyperboloidPoint(vec({5.0 / 3, 0, -4.0 / 3}))).coords().isApprox(vec({0, -0.5})));
}

TEST(Conversions, BallToHyperboloidExamples) {
  EXPECT_TRUE(ball_to_hyperboloid(BallPoint(vec({0, 0}))).coords().isApprox(vec({1, 0, 0})));
  EXPECT_TRUE(ball_to_hyperboloid(BallPoint(vec({0.5, 0}))).coords().isApprox(vec({5.0 / 3, 4.0 / 3, 0})));
}

TEST(Conversions, HalfSpaceExamples) {
  EXPECT_TRUE(ball_to_halfspace(BallPoint(vec({0, 0}))).coords().isApprox(vec({1, 0})));
  EXPECT_TRUE(ball_to_halfspace(BallPoint(vec({0.5, 0}))).coords().isApprox(vec({1.0 / 3, 0})));
  EXPECT_TRUE(ball_to_halfspace(BallPoint(vec({-0.5, 0}))).coords().isApprox(vec({3, 0})));
  EXPECT_NEAR(halfspace_to_ball(HalfSpacePoint(vec({1, 0}))).coords().norm(), 0.0, 1e-15);
  EXPECT_TRUE(halfspace_to_ball(HalfSpacePoint(vec({1.0 / 3, 0}))).coords().isApprox(vec({0.5, 0})));
}

TEST(Conversions, RoundTrips) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Index dim = 2 + i % 3;
    const BallPoint b = test::random_ball(rng, dim);
    const BallPoint b2 = hyperboloid_to_ball(ball_to_hyperboloid(b));
    EXPECT_LE((b2.coords() - b.coords()).cwiseAbs().maxCoeff(), 1e-12);
    const HalfSpacePoint h = ball_to_halfspace(b);
    const HalfSpacePoint h2 = ball_to_halfspace(halfspace_to_ball(h));
    EXPECT_LE((h2.coords() - h.coords()).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, h.coords().norm()));
  }
}

TEST(Distance, Examples) {
  const HyperboloidPoint o = HyperboloidPoint::origin(3);
  EXPECT_DOUBLE_EQ(hyperbolic_distance(o, o), 0.0);
  const HyperboloidPoint x(vec({std::cosh(1.0), std::sinh(1.0), 0}));
  EXPECT_NEAR(hyperbolic_distance(o, x), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(hyperbolic_distance(x, x), 0.0);
}

TEST(Distance, ModelsAgree) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const BallPoint a = test::random_ball(rng, 2), b = test::random_ball(rng, 2);
    const double d = hyperbolic_distance(ball_to_hyperboloid(a), ball_to_hyperboloid(b));
    EXPECT_NEAR(ball_distance(a, b), d, 1e-9);
    EXPECT_NEAR(halfspace_distance(ball_to_halfspace(a), ball_to_halfspace(b)), d, 1e-9);
  }
}

TEST(Isometry, TranslationToOriginIsIdentity) {
  Rng rng(13);
  const BallTranslation id = translate_to(BallPoint::origin(2));
  for (int i = 0; i < 100; ++i) {
    const BallPoint p = test::random_ball(rng, 2);
    EXPECT_LE((apply_isometry(id, p).coords() - p.coords()).norm(), 1e-15);
  }
}

TEST(Isometry, TranslationPreservesDistanceAndMovesOrigin) {
  Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    const BallTranslation t = translate_to(test::random_ball(rng, 2, 0.9));
    EXPECT_LE((t.apply(BallPoint::origin(2)).coords() - t.target().coords()).norm(), 1e-15);
    const BallPoint a = test::random_ball(rng, 2, 0.9), b = test::random_ball(rng, 2, 0.9);
    EXPECT_NEAR(ball_distance(t.apply(a), t.apply(b)), ball_distance(a, b), 1e-8);
  }
}

TEST(Lemma1, BoundaryMapsToHalfSpaceSphere) {
  Rng rng(15);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Index n = 2 + i % 2;
    const double lambda = 1.8 * uniform01(rng) - 0.9;
    const double w1 = 0.5 + uniform01(rng);
    Vector w = Vector::Zero(n + 1);
    w[0] = lambda * w1;
    w[1] = w1;
    const double expected = std::sqrt((1 - lambda) / (1 + lambda));
    for (int k = 0; k < 5; ++k) {
      // w*x = 0 means x_1 = lambda x_0.
      Vector rest(n - 1);
      for (Eigen::Index j = 0; j < n - 1; ++j) rest[j] = test::normal(rng);
      rest *= 3.0 * uniform01(rng) / rest.norm();
      Vector x(n + 1);
      x[0] = std::sqrt((1 + rest.squaredNorm()) / (1 - lambda * lambda));
      x[1] = lambda * x[0];
      x.tail(n - 1) = rest;
      ASSERT_NEAR(minkowski_inner(w, x), 0.0, 1e-12);
      const HalfSpacePoint h = hyperboloid_to_halfspace(HyperboloidPoint(x));
      EXPECT_NEAR(h.coords().norm(), expected, 1e-9);
    }
  }
}

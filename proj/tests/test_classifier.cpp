#include <gtest/gtest.h>

#include <cmath>

#include "hsvm/classifier.hpp"
#include "hsvm/error.hpp"
#include "test_util.hpp"

using namespace hsvm;

namespace {

const HyperboloidPoint kFar(Vector{{std::cosh(1.0), -std::sinh(1.0), 0.0}});
const HyperboloidPoint kMirror(Vector{{std::cosh(1.0), std::sinh(1.0), 0.0}});
const DecisionWeights kW(Vector{{0.0, 1.0, 0.0}});

}  // namespace

TEST(StableAsinh, MatchesStd) {
  for (double z : {-1e300, -1e10, -3.0, -1e-8, 0.0, 1e-300, 1e-8, 0.5, 1.0, 7.0, 1e8, 1e200}) {
    EXPECT_NEAR(stable_asinh(z), std::asinh(z), 1e-14 * std::max(1.0, std::abs(std::asinh(z))));
  }
  EXPECT_EQ(stable_asinh(-2.5), -stable_asinh(2.5));
}

TEST(DecisionValue, Examples) {
  EXPECT_DOUBLE_EQ(decision_value(kW, HyperboloidPoint::origin(3)), 0.0);
  EXPECT_NEAR(decision_value(kW, kFar), std::sinh(1.0), 1e-15);
}

TEST(Decide, Examples) {
  EXPECT_EQ(decide(kW, kFar), BinaryDecision::kPositive);
  EXPECT_EQ(decide(kW, kMirror), BinaryDecision::kNegative);
  EXPECT_EQ(decide(kW, HyperboloidPoint::origin(3)), BinaryDecision::kNegative);
}

TEST(Margin, Examples) {
  EXPECT_DOUBLE_EQ(geometric_margin(kW, HyperboloidPoint::origin(3), BinaryDecision::kPositive), 0.0);
  EXPECT_NEAR(geometric_margin(kW, kFar, BinaryDecision::kPositive), 1.0, 1e-14);
  EXPECT_NEAR(geometric_margin(DecisionWeights(Vector{{0.0, 2.0, 0.0}}), kFar, BinaryDecision::kPositive), 1.0,
              1e-14);
  EXPECT_NEAR(geometric_margin(kW, kFar, BinaryDecision::kNegative), -1.0, 1e-14);
}

TEST(Margin, ExamplesAgreeWithBruteForce) {
  EXPECT_NEAR(test::brute_force_margin(kW.w(), kFar.coords()), 1.0, 1e-9);
  EXPECT_NEAR(test::brute_force_margin(Vector{{0.0, 2.0, 0.0}}, kFar.coords()), 1.0, 1e-9);
}

TEST(Margin, Theorem1AgainstBruteForce) {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const DecisionWeights w(test::random_weights(rng, 3));
    const HyperboloidPoint x = test::random_hyperboloid(rng, 2);
    EXPECT_NEAR(geometric_margin(w, x, BinaryDecision::kPositive), test::brute_force_margin(w.w(), x.coords()), 1e-3);
  }
}

TEST(Margin, ScaleInvariant) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const Vector w = test::random_weights(rng, 3);
    const HyperboloidPoint x = test::random_hyperboloid(rng, 2);
    const double base = geometric_margin(DecisionWeights(w), x, BinaryDecision::kPositive);
    for (double k : {0.1, 7.0}) {
      EXPECT_NEAR(geometric_margin(DecisionWeights(k * w), x, BinaryDecision::kPositive), base, 1e-12);
    }
  }
}

TEST(Margin, SignMatchesDecision) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const DecisionWeights w(test::random_weights(rng, 3));
    const HyperboloidPoint x = test::random_hyperboloid(rng, 2);
    const double m = geometric_margin(w, x, BinaryDecision::kPositive);
    EXPECT_EQ(m > 0, decide(w, x) == BinaryDecision::kPositive);
  }
}

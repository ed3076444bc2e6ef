#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <set>
#include <vector>

#include "hsvm/error.hpp"
#include "hsvm/synth.hpp"

using namespace hsvm;

TEST(RadialSampler, MomentsMatchQuadrature) {
  for (double var : {0.25, 1.0, 1.5}) {
    const auto density = [var](double r) { return std::sinh(r) * std::exp(-r * r / (2 * var)); };
    const double hi = 12 * std::sqrt(var);
    using Q = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double z = Q::integrate(density, 0.0, hi);
    const double mean = Q::integrate([&](double r) { return r * density(r); }, 0.0, hi) / z;
    const double second = Q::integrate([&](double r) { return r * r * density(r); }, 0.0, hi) / z;
    const RadialSampler sampler(var);
    Rng rng(41);
    double m1 = 0, m2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double r = sampler(rng);
      ASSERT_GE(r, 0.0);
      ASSERT_LE(r, sampler.r_max());
      m1 += r / n;
      m2 += r * r / n;
    }
    EXPECT_NEAR(m1 / mean, 1.0, 0.02) << var;
    EXPECT_NEAR(m2 / second, 1.0, 0.02) << var;
  }
}

TEST(Gaussian, AnglesAreUniform) {
  Rng rng(42);
  const auto pts = sample_hyperbolic_gaussian(BallPoint::origin(2), 1.0, 20000, rng);
  std::vector<int> bins(16);
  for (const BallPoint& p : pts) {
    const double a = std::atan2(p[1], p[0]) + M_PI;
    ++bins[std::min<std::size_t>(15, static_cast<std::size_t>(a / (2 * M_PI) * 16))];
  }
  double chi2 = 0;
  const double expected = 20000.0 / 16;
  for (int b : bins) chi2 += (b - expected) * (b - expected) / expected;
  EXPECT_LT(chi2, 37.7);  // 0.999 quantile, 15 dof
}

TEST(Gaussian, DeltaLimitStaysAtCentroid) {
  Rng rng(43);
  const BallPoint c = polar_to_ball(2.0, 1.0);
  for (const BallPoint& p : sample_hyperbolic_gaussian(c, 1e-8, 500, rng)) {
    EXPECT_LT(ball_distance(p, c), 1e-2);
  }
}

TEST(Gaussian, CentredOnTranslatedCentroid) {
  Rng rng(44);
  const BallPoint c = polar_to_ball(2.5, -0.7);
  const auto pts = sample_hyperbolic_gaussian(c, 0.3, 4000, rng);
  Rng rng0(44);
  const auto ref = sample_hyperbolic_gaussian(BallPoint::origin(2), 0.3, 4000, rng0);
  double d = 0, d0 = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    d += ball_distance(pts[i], c);
    d0 += ball_distance(ref[i], BallPoint::origin(2));
  }
  EXPECT_NEAR(d, d0, 1e-6 * d0);
}

TEST(Gaussian, Deterministic) {
  Rng a(45), b(45);
  const auto pa = sample_hyperbolic_gaussian(BallPoint::origin(2), 1.0, 50, a);
  const auto pb = sample_hyperbolic_gaussian(BallPoint::origin(2), 1.0, 50, b);
  for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_EQ(pa[i].coords(), pb[i].coords());
}

TEST(Mixture, DefaultSpec) {
  const LabeledDataset d = gen_gaussian_mixture(GaussianMixtureSpec{});
  EXPECT_EQ(d.size(), 400);
  EXPECT_EQ(d.num_classes(), 4u);
  EXPECT_NO_THROW(d.validate());
  for (std::size_t n : d.positives_per_class()) EXPECT_EQ(n, 100u);
}

TEST(Mixture, SeedsAndClasses) {
  GaussianMixtureSpec one;
  one.num_classes = 1;
  one.points_per_class = 10;
  for (const auto& l : gen_gaussian_mixture(one).labels) EXPECT_EQ(l, std::vector<int>{0});
  GaussianMixtureSpec a, b;
  b.seed = 1;
  EXPECT_NE(gen_gaussian_mixture(a).points, gen_gaussian_mixture(b).points);
  EXPECT_EQ(gen_gaussian_mixture(a).points, gen_gaussian_mixture(a).points);
  GaussianMixtureSpec bad;
  bad.dim = 3;
  EXPECT_THROW(gen_gaussian_mixture(bad), ValidationError);
}

TEST(Ps, SmallNetworkIsForced) {
  Rng rng(46);
  const PsNetwork net = ps_generate(3, 4, 2.25, 0, rng);
  const std::vector<std::pair<int, int>> expected{{1, 0}, {2, 0}, {2, 1}};
  std::vector<std::pair<int, int>> edges = net.edges;
  std::sort(edges.begin() + 1, edges.end());
  EXPECT_EQ(edges, expected);
  EXPECT_EQ(net.params.m, 2);
  EXPECT_DOUBLE_EQ(net.params.beta, 1 / 1.25);
}

TEST(Ps, EdgeCountAndHeavyTail) {
  Rng rng(47);
  const PsNetwork net = ps_generate(500, 4, 2.25, 0, rng);
  EXPECT_EQ(net.edges.size(), 997u);
  std::vector<int> degree(500);
  for (const auto& [a, b] : net.edges) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
    EXPECT_GT(a, b);
  }
  EXPECT_NEAR(2.0 * 997 / 500, 3.988, 1e-12);
  EXPECT_GE(*std::max_element(degree.begin(), degree.end()), 25);
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    EXPECT_EQ(net.nodes[i].creation_index, static_cast<int>(i) + 1);
    EXPECT_NEAR(net.nodes[i].birth_radius, std::log(i + 1.0), 1e-15);
  }
}

TEST(Ps, ExactDistanceVariantAndDeterminism) {
  Rng a(48), b(48), c(48);
  const PsNetwork x = ps_generate(200, 4, 2.25, 0, a), y = ps_generate(200, 4, 2.25, 0, b);
  EXPECT_EQ(x.edges, y.edges);
  const PsNetwork e = ps_generate(200, 4, 2.25, 0, c, PsDistance::kExact);
  EXPECT_EQ(e.edges.size(), x.edges.size());
  Rng d(1);
  EXPECT_THROW(ps_generate(100, 4, 2.25, 0.5, d), ValidationError);
}

TEST(Ps, EmbeddingMapsRadius) {
  Rng rng(49);
  const PsNetwork net = ps_generate(100, 4, 2.25, 0, rng);
  const Eigen::MatrixXd emb = hyperbolic_embedding_of(net);
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    EXPECT_NEAR(emb.row(static_cast<Eigen::Index>(i)).norm(), std::tanh(net.nodes[i].radius / 2), 1e-15);
  }
  EXPECT_EQ(polar_to_ball(0.0, 1.3).coords().norm(), 0.0);
  for (std::size_t i = 1; i < net.nodes.size(); ++i) {
    EXPECT_LT(emb.row(static_cast<Eigen::Index>(i - 1)).norm(), emb.row(static_cast<Eigen::Index>(i)).norm());
  }
}

TEST(Labels, ZeroProbabilityKeepsPioneerOnly) {
  Rng rng(50);
  const PsNetwork net = ps_generate(50, 4, 2.25, 0, rng);
  const LabelAssignment l = propagate_labels(net, 10, {1, 1}, 0.0, 10, rng);
  ASSERT_EQ(l.members.size(), 10u);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(l.members[k], std::vector<int>{l.pioneers[k]});
}

TEST(Labels, FullProbabilityMatchesReplay) {
  Rng rng(51);
  const PsNetwork net = ps_generate(10, 4, 2.25, 0, rng);
  const LabelAssignment l = propagate_labels(net, 5, {1, 10}, 1.0, 10, rng);
  for (std::size_t k = 0; k < l.members.size(); ++k) {
    std::set<int> expected{l.pioneers[k]};
    for (int t = l.pioneers[k] + 1; t < 10; ++t) {
      for (const auto& [young, old] : net.edges) {
        if (young == t && expected.count(old)) expected.insert(t);
      }
    }
    EXPECT_EQ(std::vector<int>(expected.begin(), expected.end()), l.members[k]);
  }
}

TEST(Labels, SizesWithinRange) {
  Rng rng(52);
  const PsNetwork net = ps_generate(500, 4, 2.25, 0, rng);
  const LabelAssignment l = propagate_labels(net, 10, {20, 50}, 0.8, 1000, rng);
  ASSERT_EQ(l.members.size(), 10u);
  for (const auto& m : l.members) {
    EXPECT_GE(m.size(), 20u);
    EXPECT_LE(m.size(), 50u);
  }
  const LabeledDataset d = ps_dataset(net, l);
  EXPECT_EQ(d.size(), 500);
  EXPECT_EQ(d.num_classes(), 10u);
  EXPECT_NO_THROW(d.validate());
}

TEST(Labels, ExhaustedAttemptsThrow) {
  Rng rng(53);
  const PsNetwork net = ps_generate(30, 4, 2.25, 0, rng);
  EXPECT_THROW(propagate_labels(net, 1, {100, 200}, 0.8, 5, rng), GenerationError);
  EXPECT_THROW(propagate_labels(net, 1, {5, 2}, 0.8, 5, rng), ValidationError);
}

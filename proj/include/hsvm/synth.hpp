#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "hsvm/dataset.hpp"
#include "hsvm/geometry.hpp"
#include "hsvm/rng.hpp"

namespace hsvm {

// ---------------------------------------------------------------------------
// Hyperbolic Gaussian mixtures (2-D)
// ---------------------------------------------------------------------------

struct GaussianMixtureSpec {
  int num_classes = 4;
  int points_per_class = 100;
  double centroid_variance = 1.5;
  double component_variance = 1.0;
  int dim = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Inverse-CDF sampler for the hyperbolic radius of an origin-centred
/// isotropic Gaussian on H^2: density proportional to
/// sinh(r) exp(-r^2 / (2 variance)) on [0, 12 sqrt(variance)].
class RadialSampler {
 public:
  static constexpr std::size_t kKnots = std::size_t{1} << 14;

  explicit RadialSampler(double variance);

  double operator()(Rng& rng) const;
  double r_max() const { return r_max_; }

 private:
  double r_max_;
  std::vector<double> cdf_;  // normalised, cdf_.front() == 0, cdf_.back() == 1
};

/// Maps hyperbolic polar coordinates about the ball origin to the ball.
BallPoint polar_to_ball(double radius, double theta);

/// i.i.d. draws with density proportional to exp(-d(x, centroid)^2 / (2 variance))
/// with respect to hyperbolic area. Only 2-D centroids are supported.
std::vector<BallPoint> sample_hyperbolic_gaussian(const BallPoint& centroid, double variance,
                                                  std::size_t count, Rng& rng);

/// Ball-model dataset: num_classes centroids drawn around the origin, then
/// points_per_class points around each centroid; one label per point.
LabeledDataset gen_gaussian_mixture(const GaussianMixtureSpec& spec);

// ---------------------------------------------------------------------------
// Popularity-vs-similarity networks
// ---------------------------------------------------------------------------

enum class PsDistance {
  kApproximate,  // r_s + r_t + 2 ln(theta_st / 2)
  kExact,        // hyperbolic law of cosines
};

struct PsParams {
  int num_nodes = 0;
  double avg_degree = 0.0;
  double gamma = 0.0;
  double temperature = 0.0;
  int m = 0;          // links per new node
  double beta = 0.0;  // popularity fading, 1 / (gamma - 1)
};

struct PsNode {
  int creation_index = 0;  // 1-based arrival time t
  double birth_radius = 0.0;
  double radius = 0.0;  // after drifting to the final time N
  double theta = 0.0;
};

/// Nodes are stored in arrival order; edge endpoints are 0-based positions
/// in `nodes`, recorded as (new node, existing node) in creation order.
struct PsNetwork {
  std::vector<PsNode> nodes;
  std::vector<std::pair<int, int>> edges;
  PsParams params;
};

PsNetwork ps_generate(int num_nodes, double avg_degree, double gamma, double temperature, Rng& rng,
                      PsDistance distance = PsDistance::kApproximate);

struct LabelAssignment {
  std::vector<std::vector<int>> members;  // sorted node positions per label
  std::vector<int> pioneers;
  std::pair<int, int> size_range;
  double propagate_prob = 0.0;
};

/// Replays the network growth once per label, spreading the label from a
/// random pioneer to each new node that links to a labelled node (one trial
/// per node). Labels whose final size falls outside size_range (inclusive)
/// are regenerated with a fresh pioneer, up to max_attempts times.
LabelAssignment propagate_labels(const PsNetwork& net, int num_labels, std::pair<int, int> size_range,
                                 double propagate_prob, int max_attempts, Rng& rng);

/// Ball coordinates of every node: radius tanh(r/2), angle preserved.
Eigen::MatrixXd hyperbolic_embedding_of(const PsNetwork& net);

/// Ball-model multi-label dataset built from the network embedding.
LabeledDataset ps_dataset(const PsNetwork& net, const LabelAssignment& labels);

}  // namespace hsvm

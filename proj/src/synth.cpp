#include "hsvm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hsvm/error.hpp"
#include "hsvm/format.hpp"

namespace hsvm {

void GaussianMixtureSpec::validate() const {
  if (num_classes < 1) throw ValidationError("num_classes must be positive");
  if (points_per_class < 1) throw ValidationError("points_per_class must be positive");
  if (!(centroid_variance > 0.0)) throw ValidationError("centroid_variance must be positive");
  if (!(component_variance > 0.0)) throw ValidationError("component_variance must be positive");
  if (dim != 2) throw ValidationError("only dim = 2 Gaussian mixtures are supported");
}

RadialSampler::RadialSampler(double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw ValidationError("Gaussian variance must be positive");
  }
  r_max_ = 12.0 * std::sqrt(variance);
  const double h = r_max_ / static_cast<double>(kKnots - 1);

  // log of sinh(r) exp(-r^2 / (2 variance)), shifted by its maximum below.
  std::vector<double> log_density(kKnots);
  for (std::size_t i = 0; i < kKnots; ++i) {
    const double r = h * static_cast<double>(i);
    const double log_sinh =
        r > 0.0 ? r + std::log1p(-std::exp(-2.0 * r)) - std::numbers::ln2 : -INFINITY;
    log_density[i] = log_sinh - r * r / (2.0 * variance);
  }
  const double peak = *std::max_element(log_density.begin(), log_density.end());

  cdf_.assign(kKnots, 0.0);
  double prev = std::exp(log_density[0] - peak);
  for (std::size_t i = 1; i < kKnots; ++i) {
    const double cur = std::exp(log_density[i] - peak);
    cdf_[i] = cdf_[i - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

double RadialSampler::operator()(Rng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto hi = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
      std::distance(cdf_.begin(), it), static_cast<std::ptrdiff_t>(kKnots - 1)));
  const std::size_t lo = hi - 1;
  const double h = r_max_ / static_cast<double>(kKnots - 1);
  const double width = cdf_[hi] - cdf_[lo];
  const double frac = width > 0.0 ? (u - cdf_[lo]) / width : 0.0;
  return h * (static_cast<double>(lo) + frac);
}

BallPoint polar_to_ball(double radius, double theta) {
  const double rho = std::tanh(0.5 * radius);
  Vector b(2);
  b << rho * std::cos(theta), rho * std::sin(theta);
  return BallPoint(std::move(b));
}

std::vector<BallPoint> sample_hyperbolic_gaussian(const BallPoint& centroid, double variance,
                                                  std::size_t count, Rng& rng) {
  if (centroid.dim() != 2) {
    throw ValidationError("hyperbolic Gaussian sampling supports dim = 2 only");
  }
  const RadialSampler radial(variance);
  const BallTranslation shift = translate_to(centroid);
  std::vector<BallPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    const double r = radial(rng);
    out.push_back(shift.apply(polar_to_ball(r, theta)));
  }
  return out;
}

LabeledDataset gen_gaussian_mixture(const GaussianMixtureSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const auto centroids = sample_hyperbolic_gaussian(
      BallPoint::origin(2), spec.centroid_variance, static_cast<std::size_t>(spec.num_classes), rng);

  LabeledDataset data;
  data.model = PointModel::kBall;
  data.points.resize(static_cast<Eigen::Index>(spec.num_classes) * spec.points_per_class, 2);
  Eigen::Index row = 0;
  for (int k = 0; k < spec.num_classes; ++k) {
    data.class_ids.push_back(std::to_string(k));
    const auto cloud = sample_hyperbolic_gaussian(centroids[static_cast<std::size_t>(k)],
                                                  spec.component_variance,
                                                  static_cast<std::size_t>(spec.points_per_class), rng);
    for (const BallPoint& p : cloud) {
      data.points.row(row++) = p.coords().transpose();
      data.labels.push_back({k});
    }
  }
  data.metadata = {
      {"generator", "gaussian_mixture"},
      {"num_classes", std::to_string(spec.num_classes)},
      {"points_per_class", std::to_string(spec.points_per_class)},
      {"centroid_variance", format_real(spec.centroid_variance)},
      {"component_variance", format_real(spec.component_variance)},
      {"dim", std::to_string(spec.dim)},
      {"seed", std::to_string(spec.seed)},
  };
  return data;
}

namespace {

double angular_gap(double a, double b) {
  const double d = std::abs(a - b);
  return std::numbers::pi - std::abs(std::numbers::pi - d);
}

}  // namespace

PsNetwork ps_generate(int num_nodes, double avg_degree, double gamma, double temperature, Rng& rng,
                      PsDistance distance) {
  if (num_nodes < 2) throw ValidationError("PS network needs at least 2 nodes");
  if (!(avg_degree >= 2.0)) throw ValidationError("PS average degree must be >= 2");
  if (!(gamma > 2.0)) throw ValidationError("PS scaling exponent gamma must exceed 2");
  if (temperature != 0.0) throw ValidationError("only temperature 0 PS networks are supported");

  PsNetwork net;
  net.params = {num_nodes, avg_degree, gamma, temperature,
                static_cast<int>(std::lround(avg_degree / 2.0)), 1.0 / (gamma - 1.0)};
  const int m = net.params.m;
  const double beta = net.params.beta;

  net.nodes.reserve(static_cast<std::size_t>(num_nodes));
  std::vector<std::pair<double, int>> candidates;
  for (int t = 1; t <= num_nodes; ++t) {
    const double r_t = std::log(static_cast<double>(t));
    const double theta_t = 2.0 * std::numbers::pi * uniform01(rng);
    candidates.clear();
    for (int s = 1; s < t; ++s) {
      const PsNode& old = net.nodes[static_cast<std::size_t>(s - 1)];
      const double r_s = beta * old.birth_radius + (1.0 - beta) * r_t;
      const double gap = angular_gap(old.theta, theta_t);
      double d;
      if (distance == PsDistance::kApproximate) {
        d = r_s + r_t + 2.0 * std::log(gap / 2.0);
      } else {
        const double c = std::cosh(r_s) * std::cosh(r_t) - std::sinh(r_s) * std::sinh(r_t) * std::cos(gap);
        d = std::acosh(std::max(1.0, c));
      }
      candidates.emplace_back(d, s - 1);
    }
    const auto links = static_cast<std::ptrdiff_t>(std::min(m, t - 1));
    std::partial_sort(candidates.begin(), candidates.begin() + links, candidates.end());
    for (std::ptrdiff_t k = 0; k < links; ++k) {
      net.edges.emplace_back(t - 1, candidates[static_cast<std::size_t>(k)].second);
    }
    net.nodes.push_back({t, r_t, r_t, theta_t});
  }

  const double log_n = std::log(static_cast<double>(num_nodes));
  for (PsNode& node : net.nodes) {
    node.radius = beta * node.birth_radius + (1.0 - beta) * log_n;
  }
  return net;
}

LabelAssignment propagate_labels(const PsNetwork& net, int num_labels, std::pair<int, int> size_range,
                                 double propagate_prob, int max_attempts, Rng& rng) {
  if (!(propagate_prob >= 0.0 && propagate_prob <= 1.0)) {
    throw ValidationError("propagate_prob must lie in [0, 1]");
  }
  if (num_labels < 0) throw ValidationError("num_labels must be non-negative");
  if (size_range.first > size_range.second || size_range.second < 1) {
    throw ValidationError("invalid label size range");
  }
  if (max_attempts < 1) throw ValidationError("max_attempts must be positive");

  const auto n = net.nodes.size();
  // Older endpoints of the edges each node created on arrival.
  std::vector<std::vector<int>> links_at_creation(n);
  for (const auto& [young, old] : net.edges) {
    links_at_creation[static_cast<std::size_t>(young)].push_back(old);
  }

  LabelAssignment out;
  out.size_range = size_range;
  out.propagate_prob = propagate_prob;
  std::vector<char> labelled(n);
  for (int label = 0; label < num_labels; ++label) {
    bool accepted = false;
    for (int attempt = 0; attempt < max_attempts && !accepted; ++attempt) {
      std::fill(labelled.begin(), labelled.end(), 0);
      const std::size_t pioneer = uniform_index(rng, n);
      labelled[pioneer] = 1;
      int size = 1;
      for (std::size_t t = pioneer + 1; t < n; ++t) {
        const auto& links = links_at_creation[t];
        const bool touches = std::any_of(links.begin(), links.end(), [&](int s) {
          return labelled[static_cast<std::size_t>(s)] != 0;
        });
        if (touches && uniform01(rng) < propagate_prob) {
          labelled[t] = 1;
          ++size;
        }
      }
      if (size >= size_range.first && size <= size_range.second) {
        accepted = true;
        std::vector<int> members;
        for (std::size_t i = 0; i < n; ++i) {
          if (labelled[i]) members.push_back(static_cast<int>(i));
        }
        out.members.push_back(std::move(members));
        out.pioneers.push_back(static_cast<int>(pioneer));
      }
    }
    if (!accepted) {
      throw GenerationError("label " + std::to_string(label) + ": no pioneer produced a size in [" +
                            std::to_string(size_range.first) + ", " +
                            std::to_string(size_range.second) + "] after " +
                            std::to_string(max_attempts) + " attempts");
    }
  }
  return out;
}

Eigen::MatrixXd hyperbolic_embedding_of(const PsNetwork& net) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(net.nodes.size()), 2);
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) =
        polar_to_ball(net.nodes[i].radius, net.nodes[i].theta).coords().transpose();
  }
  return out;
}

LabeledDataset ps_dataset(const PsNetwork& net, const LabelAssignment& labels) {
  LabeledDataset data;
  data.model = PointModel::kBall;
  data.points = hyperbolic_embedding_of(net);
  data.labels.assign(net.nodes.size(), {});
  for (std::size_t k = 0; k < labels.members.size(); ++k) {
    data.class_ids.push_back(std::to_string(k));
    for (int node : labels.members[k]) {
      data.labels[static_cast<std::size_t>(node)].push_back(static_cast<int>(k));
    }
  }
  data.metadata = {
      {"generator", "ps_network"},
      {"nodes", std::to_string(net.params.num_nodes)},
      {"avg_degree", format_real(net.params.avg_degree)},
      {"gamma", format_real(net.params.gamma)},
      {"temperature", format_real(net.params.temperature)},
      {"labels", std::to_string(labels.members.size())},
      {"size_range", std::to_string(labels.size_range.first) + "," +
                         std::to_string(labels.size_range.second)},
      {"propagate_prob", format_real(labels.propagate_prob)},
  };
  return data;
}

}  // namespace hsvm

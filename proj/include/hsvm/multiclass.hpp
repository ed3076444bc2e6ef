#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsvm/dataset.hpp"
#include "hsvm/geometry.hpp"
#include "hsvm/solver.hpp"

namespace hsvm {

/// Which binary classifier family an OvaModel holds.
///   kHyperbolic: Minkowski weights on hyperboloid coordinates.
///   kEuclidean:  linear weights (bias last) on Poincare-ball coordinates.
enum class Method { kHyperbolic, kEuclidean };

std::string_view to_string(Method method);
/// Accepts "hyperbolic", "hyperbolic_svm", "euclidean", "euclidean_svm".
Method parse_method(std::string_view name);

/// Input rows a method trains on: hyperboloid rows for kHyperbolic, ball
/// rows for kEuclidean.
Eigen::MatrixXd method_features(const LabeledDataset& data, Method method);

/// Sigmoid P(y = +1 | s) = 1 / (1 + exp(A s + B)).
struct PlattParams {
  double A = 0.0;
  double B = 0.0;

  double probability(double score) const;
};

/// Steepest slope allowed for a fitted A; see platt_fit.
inline constexpr double kPlattMaxSlope = -1e-6;

/// Maximum-likelihood sigmoid on Platt's smoothed targets, by Newton steps
/// with backtracking. A is kept at or below kPlattMaxSlope so probability
/// always increases with score; when the unconstrained optimum has a larger
/// A, only B is refitted with A pinned at that bound.
/// Throws ValidationError unless both labels occur.
PlattParams platt_fit(std::span<const double> scores, std::span<const int> labels);

struct OvaModel {
  Method method = Method::kHyperbolic;
  Eigen::Index dim = 0;  // intrinsic dimension n
  std::vector<std::string> class_ids;
  std::vector<Vector> weights;  // n + 1 entries each
  std::vector<PlattParams> platt;
  // A degenerate class had no positives (or no negatives) to train on and
  // always predicts probability 0.
  std::vector<bool> degenerate;
  std::vector<std::string> warnings;
  TrainConfig config;
};

/// Binary classifier for one class of an OVA model, from its raw rows.
Vector train_binary(const Eigen::MatrixXd& rows, std::span<const int> y, const TrainConfig& config,
                    Method method);

/// Trains one binary classifier per class. With `calibrate`, Platt
/// parameters are fitted on out-of-fold scores from a seeded 2-fold split of
/// the training data; otherwise they stay at (A, B) = (-1, 0).
OvaModel ova_train(const LabeledDataset& data, const TrainConfig& config, Method method,
                   bool calibrate = true);

/// Raw decision values, one column per class (points x classes).
Eigen::MatrixXd ova_scores(const OvaModel& model, const LabeledDataset& points);

/// Calibrated per-class probabilities in (0, 1). Rows are not normalised.
Eigen::MatrixXd ova_predict(const OvaModel& model, const LabeledDataset& points);

}  // namespace hsvm

#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hsvm {

enum class PointModel { kBall, kHyperboloid, kHalfSpace };

std::string_view to_string(PointModel model);
/// Accepts "ball", "hyperboloid", "halfspace"; throws ValidationError otherwise.
PointModel parse_point_model(std::string_view name);

/// Points in one declared model plus multi-label class membership.
///
/// Rows of `points` hold x_0..x_n for the hyperboloid and x_1..x_n for the
/// ball and half-space models. `labels[j]` lists indices into `class_ids`;
/// an empty list is a point that is negative for every class.
struct LabeledDataset {
  PointModel model = PointModel::kBall;
  Eigen::MatrixXd points;
  std::vector<std::string> class_ids;
  std::vector<std::vector<int>> labels;
  std::map<std::string, std::string> metadata;

  Eigen::Index size() const { return points.rows(); }
  /// Intrinsic dimension n of the hyperbolic space.
  Eigen::Index dim() const;
  std::size_t num_classes() const { return class_ids.size(); }

  bool has_label(Eigen::Index point, int cls) const;
  /// +1 for members of `cls`, -1 for everything else.
  std::vector<int> binary_labels(int cls) const;
  std::vector<std::size_t> positives_per_class() const;

  LabeledDataset subset(std::span<const std::size_t> rows) const;

  /// Checks shapes, label indices and every row against its model.
  void validate() const;
};

/// Ambient hyperboloid coordinates of every row.
Eigen::MatrixXd to_hyperboloid_rows(const LabeledDataset& data);
/// Poincare ball coordinates of every row.
Eigen::MatrixXd to_ball_rows(const LabeledDataset& data);

}  // namespace hsvm

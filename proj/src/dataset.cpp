#include "hsvm/dataset.hpp"

#include <algorithm>
#include <string>

#include "hsvm/error.hpp"
#include "hsvm/geometry.hpp"

namespace hsvm {

std::string_view to_string(PointModel model) {
  switch (model) {
    case PointModel::kBall:
      return "ball";
    case PointModel::kHyperboloid:
      return "hyperboloid";
    case PointModel::kHalfSpace:
      return "halfspace";
  }
  return "unknown";
}

PointModel parse_point_model(std::string_view name) {
  if (name == "ball") return PointModel::kBall;
  if (name == "hyperboloid") return PointModel::kHyperboloid;
  if (name == "halfspace") return PointModel::kHalfSpace;
  throw ValidationError("unknown point model '" + std::string(name) + "'");
}

Eigen::Index LabeledDataset::dim() const {
  return model == PointModel::kHyperboloid ? points.cols() - 1 : points.cols();
}

bool LabeledDataset::has_label(Eigen::Index point, int cls) const {
  const auto& l = labels[static_cast<std::size_t>(point)];
  return std::find(l.begin(), l.end(), cls) != l.end();
}

std::vector<int> LabeledDataset::binary_labels(int cls) const {
  std::vector<int> y(static_cast<std::size_t>(size()));
  for (Eigen::Index j = 0; j < size(); ++j) {
    y[static_cast<std::size_t>(j)] = has_label(j, cls) ? 1 : -1;
  }
  return y;
}

std::vector<std::size_t> LabeledDataset::positives_per_class() const {
  std::vector<std::size_t> counts(num_classes(), 0);
  for (const auto& l : labels) {
    for (int c : l) ++counts[static_cast<std::size_t>(c)];
  }
  return counts;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> rows) const {
  LabeledDataset out;
  out.model = model;
  out.class_ids = class_ids;
  out.metadata = metadata;
  out.points.resize(static_cast<Eigen::Index>(rows.size()), points.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.points.row(static_cast<Eigen::Index>(i)) = points.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(labels[rows[i]]);
  }
  return out;
}

void LabeledDataset::validate() const {
  if (labels.size() != static_cast<std::size_t>(points.rows())) {
    throw ValidationError("dataset has " + std::to_string(points.rows()) + " points but " +
                          std::to_string(labels.size()) + " label rows");
  }
  if (dim() < 1) {
    throw DimensionError("dataset points have too few coordinates for model " +
                         std::string(to_string(model)));
  }
  for (std::size_t j = 0; j < labels.size(); ++j) {
    for (int c : labels[j]) {
      if (c < 0 || static_cast<std::size_t>(c) >= class_ids.size()) {
        throw ValidationError("point " + std::to_string(j) + " references undeclared class index " +
                              std::to_string(c));
      }
    }
  }
  for (Eigen::Index j = 0; j < points.rows(); ++j) {
    Vector row = points.row(j).transpose();
    try {
      switch (model) {
        case PointModel::kBall:
          BallPoint{std::move(row)};
          break;
        case PointModel::kHyperboloid:
          HyperboloidPoint{std::move(row)};
          break;
        case PointModel::kHalfSpace:
          HalfSpacePoint{std::move(row)};
          break;
      }
    } catch (const Error& e) {
      throw ValidationError("point " + std::to_string(j) + ": " + e.what());
    }
  }
}

Eigen::MatrixXd to_hyperboloid_rows(const LabeledDataset& data) {
  if (data.model == PointModel::kHyperboloid) return data.points;
  Eigen::MatrixXd out(data.size(), data.dim() + 1);
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    Vector row = data.points.row(j).transpose();
    const HyperboloidPoint x = data.model == PointModel::kBall
                                   ? ball_to_hyperboloid(BallPoint(std::move(row)))
                                   : halfspace_to_hyperboloid(HalfSpacePoint(std::move(row)));
    out.row(j) = x.coords().transpose();
  }
  return out;
}

Eigen::MatrixXd to_ball_rows(const LabeledDataset& data) {
  if (data.model == PointModel::kBall) return data.points;
  Eigen::MatrixXd out(data.size(), data.dim());
  for (Eigen::Index j = 0; j < data.size(); ++j) {
    Vector row = data.points.row(j).transpose();
    const BallPoint b = data.model == PointModel::kHyperboloid
                            ? hyperboloid_to_ball(HyperboloidPoint(std::move(row)))
                            : halfspace_to_ball(HalfSpacePoint(std::move(row)));
    out.row(j) = b.coords().transpose();
  }
  return out;
}

}  // namespace hsvm

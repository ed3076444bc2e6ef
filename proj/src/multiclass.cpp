#include "hsvm/multiclass.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsvm/error.hpp"
#include "hsvm/rng.hpp"

namespace hsvm {

std::string_view to_string(Method method) {
  return method == Method::kHyperbolic ? "hyperbolic" : "euclidean";
}

Method parse_method(std::string_view name) {
  if (name == "hyperbolic" || name == "hyperbolic_svm") return Method::kHyperbolic;
  if (name == "euclidean" || name == "euclidean_svm") return Method::kEuclidean;
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

Eigen::MatrixXd method_features(const LabeledDataset& data, Method method) {
  return method == Method::kHyperbolic ? to_hyperboloid_rows(data) : to_ball_rows(data);
}

double PlattParams::probability(double score) const {
  const double f = A * score + B;
  // 1 / (1 + e^f) without overflow for either sign of f
  return f >= 0.0 ? std::exp(-f) / (1.0 + std::exp(-f)) : 1.0 / (1.0 + std::exp(f));
}

namespace {

struct PlattObjective {
  std::span<const double> scores;
  std::vector<double> targets;

  // Negative log-likelihood of the smoothed targets.
  double value(double a, double b) const {
    double nll = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const double f = a * scores[i] + b;
      const double t = targets[i];
      nll += f >= 0.0 ? t * f + std::log1p(std::exp(-f)) : (t - 1.0) * f + std::log1p(std::exp(f));
    }
    return nll;
  }
};

constexpr int kPlattMaxIters = 200;
constexpr int kPlattMaxHalvings = 20;
constexpr double kPlattGradTol = 1e-10;
constexpr double kPlattHessianRidge = 1e-12;

// Damped Newton on (A, B), or on B alone when fix_a is set.
void platt_newton(const PlattObjective& obj, double& a, double& b, bool fix_a) {
  double fval = obj.value(a, b);
  for (int iter = 0; iter < kPlattMaxIters; ++iter) {
    double h11 = kPlattHessianRidge, h22 = kPlattHessianRidge, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < obj.scores.size(); ++i) {
      const double s = obj.scores[i];
      const double f = a * s + b;
      double p, q;  // p = 1 / (1 + e^f), q = 1 - p
      if (f >= 0.0) {
        p = std::exp(-f) / (1.0 + std::exp(-f));
        q = 1.0 / (1.0 + std::exp(-f));
      } else {
        p = 1.0 / (1.0 + std::exp(f));
        q = std::exp(f) / (1.0 + std::exp(f));
      }
      const double d2 = p * q;
      h11 += s * s * d2;
      h22 += d2;
      h21 += s * d2;
      const double d1 = obj.targets[i] - p;
      g1 += s * d1;
      g2 += d1;
    }
    if (fix_a) {
      g1 = 0.0;
      h21 = 0.0;
    }
    if (std::hypot(g1, g2) <= kPlattGradTol) break;

    double da, db;
    if (fix_a) {
      da = 0.0;
      db = -g2 / h22;
    } else {
      const double det = h11 * h22 - h21 * h21;
      da = -(h22 * g1 - h21 * g2) / det;
      db = -(-h21 * g1 + h11 * g2) / det;
    }
    const double slope = g1 * da + g2 * db;

    double step = 1.0;
    bool moved = false;
    for (int halving = 0; halving <= kPlattMaxHalvings; ++halving, step *= 0.5) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nf = obj.value(na, nb);
      if (nf < fval + 1e-4 * step * slope) {
        a = na;
        b = nb;
        fval = nf;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
}

}  // namespace

PlattParams platt_fit(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionError("platt_fit: scores and labels differ in length");
  }
  const auto n_pos = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  const auto n_neg = static_cast<double>(labels.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) {
    throw ValidationError("platt_fit: degenerate calibration, need both positive and negative labels");
  }

  PlattObjective obj{scores, {}};
  const double hi = (n_pos + 1.0) / (n_pos + 2.0);
  const double lo = 1.0 / (n_neg + 2.0);
  obj.targets.reserve(labels.size());
  for (int l : labels) obj.targets.push_back(l == 1 ? hi : lo);

  double a = 0.0;
  double b = std::log((n_neg + 1.0) / (n_pos + 1.0));
  platt_newton(obj, a, b, false);
  if (!(a <= kPlattMaxSlope)) {
    a = kPlattMaxSlope;
    platt_newton(obj, a, b, true);
  }
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw NumericalError("platt_fit: non-finite sigmoid parameters");
  }
  return {a, b};
}

namespace {

double raw_score(Method method, const Vector& w, const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  if (method == Method::kHyperbolic) {
    return w[0] * row[0] - row.tail(row.size() - 1).dot(w.tail(w.size() - 1).transpose());
  }
  return row.dot(w.head(row.size()).transpose()) + w[row.size()];
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& rows, const std::vector<std::size_t>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), rows.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = rows.row(static_cast<Eigen::Index>(idx[i]));
  }
  return out;
}

// Out-of-fold scores from a label-stratified 2-fold split.
std::vector<double> out_of_fold_scores(const Eigen::MatrixXd& rows, const std::vector<int>& y,
                                       const TrainConfig& config, Method method) {
  Rng rng(config.seed);
  std::vector<std::size_t> pos, neg;
  for (std::size_t j = 0; j < y.size(); ++j) (y[j] == 1 ? pos : neg).push_back(j);
  shuffle(pos, rng);
  shuffle(neg, rng);
  std::vector<int> fold(y.size());
  for (std::size_t i = 0; i < pos.size(); ++i) fold[pos[i]] = static_cast<int>(i % 2);
  for (std::size_t i = 0; i < neg.size(); ++i) fold[neg[i]] = static_cast<int>((i + pos.size()) % 2);

  std::vector<double> scores(y.size());
  for (int f = 0; f < 2; ++f) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t j = 0; j < y.size(); ++j) (fold[j] == f ? test_idx : train_idx).push_back(j);
    if (train_idx.empty()) {
      // Fewer than 2 points: score in-sample.
      train_idx = test_idx;
    }
    std::vector<int> train_y;
    for (std::size_t j : train_idx) train_y.push_back(y[j]);
    const Vector w = train_binary(take_rows(rows, train_idx), train_y, config, method);
    for (std::size_t j : test_idx) scores[j] = raw_score(method, w, rows.row(static_cast<Eigen::Index>(j)));
  }
  return scores;
}

}  // namespace

Vector train_binary(const Eigen::MatrixXd& rows, std::span<const int> y, const TrainConfig& config,
                    Method method) {
  if (method == Method::kHyperbolic) return hsvm_train(rows, y, config).weights.w();
  return euclidean_svm_train(rows, y, config).weights;
}

OvaModel ova_train(const LabeledDataset& data, const TrainConfig& config, Method method,
                   bool calibrate) {
  config.validate();
  if (data.size() == 0) throw ValidationError("ova_train: empty dataset");
  if (data.num_classes() == 0) throw ValidationError("ova_train: dataset declares no classes");

  OvaModel model;
  model.method = method;
  model.dim = data.dim();
  model.class_ids = data.class_ids;
  model.config = config;

  const Eigen::MatrixXd rows = method_features(data, method);
  for (std::size_t k = 0; k < data.num_classes(); ++k) {
    const std::vector<int> y = data.binary_labels(static_cast<int>(k));
    const auto n_pos = std::count(y.begin(), y.end(), 1);
    const auto n_neg = static_cast<std::ptrdiff_t>(y.size()) - n_pos;
    const std::string& id = data.class_ids[k];

    if (n_pos == 0 || n_neg == 0) {
      model.weights.push_back(Vector::Zero(data.dim() + 1));
      model.platt.push_back({});
      model.degenerate.push_back(true);
      model.warnings.push_back("class " + id + ": " + (n_pos == 0 ? "no positive" : "no negative") +
                               " training examples; predicts probability 0");
      continue;
    }
    if (n_pos < 2) {
      model.warnings.push_back("class " + id + ": only " + std::to_string(n_pos) +
                               " positive training example");
    }

    TrainConfig class_config = config;
    class_config.seed = derive_seed(config.seed, {hash_key(id)});
    model.weights.push_back(train_binary(rows, y, class_config, method));
    model.degenerate.push_back(false);
    if (calibrate) {
      const auto scores = out_of_fold_scores(rows, y, class_config, method);
      model.platt.push_back(platt_fit(scores, y));
    } else {
      model.platt.push_back({-1.0, 0.0});
    }
  }
  return model;
}

Eigen::MatrixXd ova_scores(const OvaModel& model, const LabeledDataset& points) {
  if (points.dim() != model.dim) {
    throw DimensionError("model expects " + std::to_string(model.dim) + "-dimensional points, got " +
                         std::to_string(points.dim()));
  }
  const Eigen::MatrixXd rows = method_features(points, model.method);
  const auto n_classes = static_cast<Eigen::Index>(model.class_ids.size());
  Eigen::MatrixXd scores(rows.rows(), n_classes);
  for (Eigen::Index k = 0; k < n_classes; ++k) {
    const Vector& w = model.weights[static_cast<std::size_t>(k)];
    for (Eigen::Index j = 0; j < rows.rows(); ++j) scores(j, k) = raw_score(model.method, w, rows.row(j));
  }
  return scores;
}

Eigen::MatrixXd ova_predict(const OvaModel& model, const LabeledDataset& points) {
  Eigen::MatrixXd probs = ova_scores(model, points);
  for (Eigen::Index k = 0; k < probs.cols(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    for (Eigen::Index j = 0; j < probs.rows(); ++j) {
      probs(j, k) = model.degenerate[kk] ? 0.0 : model.platt[kk].probability(probs(j, k));
    }
  }
  return probs;
}

}  // namespace hsvm

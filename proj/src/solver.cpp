#include "hsvm/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hsvm/classifier.hpp"
#include "hsvm/error.hpp"

namespace hsvm {
namespace {

const double kAsinhOne = std::asinh(1.0);

void check_labels(const Eigen::MatrixXd& rows, std::span<const int> y) {
  if (rows.rows() == 0) {
    throw ValidationError("training data is empty");
  }
  if (static_cast<std::size_t>(rows.rows()) != y.size()) {
    throw DimensionError("got " + std::to_string(rows.rows()) + " points but " +
                         std::to_string(y.size()) + " labels");
  }
  for (int v : y) {
    if (v != 1 && v != -1) throw ValidationError("binary labels must be +1 or -1");
  }
}

Eigen::Map<const Eigen::VectorXi> as_vector(std::span<const int> y) {
  return {y.data(), static_cast<Eigen::Index>(y.size())};
}

// Rows with spatial coordinates negated, so that (minkowski_rows * w)_j = w*x_j.
Eigen::MatrixXd minkowski_rows(const Eigen::MatrixXd& points) {
  Eigen::MatrixXd m = points;
  m.rightCols(m.cols() - 1) *= -1.0;
  return m;
}

struct HsvmProblem {
  Eigen::MatrixXd rows;  // Minkowski-signed
  Eigen::VectorXd y;
  double C;

  HsvmProblem(const Eigen::MatrixXd& points, std::span<const int> labels, double c)
      : rows(minkowski_rows(points)), y(as_vector(labels).cast<double>()), C(c) {}

  // y_j (w*x_j) for every row.
  Eigen::VectorXd margins(const Vector& w) const { return y.cwiseProduct(rows * w); }

  double objective(const Vector& w, const Eigen::VectorXd& z) const {
    const double norm = minkowski_inner(w, w);
    if (!(norm < 0.0)) {
      throw InfeasibleWeightsError("hsvm objective needs w*w < 0");
    }
    double penalty = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      if (z[j] < 1.0) penalty += kAsinhOne - stable_asinh(z[j]);
    }
    return -0.5 * norm + C * penalty;
  }

  Vector gradient(const Vector& w, const Eigen::VectorXd& z) const {
    if (!(minkowski_inner(w, w) < 0.0)) {
      throw InfeasibleWeightsError("hsvm gradient needs w*w < 0");
    }
    Vector grad = w;
    grad[0] = -w[0];
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(z.size());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      // asinh(z) < asinh(1) <=> z < 1
      if (z[j] < 1.0) coef[j] = -C * y[j] / std::sqrt(1.0 + z[j] * z[j]);
    }
    grad.noalias() += rows.transpose() * coef;
    return grad;
  }
};

struct EuclideanProblem {
  Eigen::MatrixXd rows;  // features with a trailing 1
  Eigen::VectorXd y;
  double C;

  EuclideanProblem(const Eigen::MatrixXd& features, std::span<const int> labels, double c)
      : rows(features.rows(), features.cols() + 1), y(as_vector(labels).cast<double>()), C(c) {
    rows.leftCols(features.cols()) = features;
    rows.col(features.cols()).setOnes();
  }

  Eigen::VectorXd margins(const Vector& w) const { return y.cwiseProduct(rows * w); }

  double objective(const Vector& w, const Eigen::VectorXd& z) const {
    return 0.5 * w.squaredNorm() + C * (1.0 - z.array()).max(0.0).sum();
  }

  Vector gradient(const Vector& w, const Eigen::VectorXd& z) const {
    const Eigen::VectorXd coef = (z.array() < 1.0).select(-C * y, 0.0);
    Vector grad = w;
    grad.noalias() += rows.transpose() * coef;
    return grad;
  }
};

// Stops once the relative objective change stays below tol for this many
// consecutive iterations.
constexpr int kPatience = 10;
constexpr int kMaxHalvings = 60;
constexpr double kArmijo = 1e-4;

template <typename Problem, typename Project>
TrainReport descend(const Problem& problem, Vector& w, const TrainConfig& config,
                    Project&& project) {
  TrainReport report;
  Eigen::VectorXd z = problem.margins(w);
  double current = problem.objective(w, z);
  report.warm_start_objective = current;
  double best = current;
  Vector best_w = w;
  int quiet = 0;
  report.objective_trace.reserve(static_cast<std::size_t>(config.max_iters));

  // Backtracking runs Armijo steps until they stall at a hinge kink, then
  // continues with the diminishing subgradient schedule from there.
  bool armijo = config.step_rule == StepRule::kBacktracking;
  double eta = config.step_size;
  const double base = config.step_size;
  int t0 = 0;
  for (int t = 0; t < config.max_iters; ++t) {
    const Vector grad = problem.gradient(w, z);
    if (!grad.allFinite()) {
      throw NumericalError("non-finite gradient at iteration " + std::to_string(t));
    }
    double next = current;
    bool accepted = false;
    if (armijo) {
      for (int halving = 0; halving < kMaxHalvings; ++halving, eta *= 0.5) {
        Vector trial = project(Vector(w - eta * grad));
        Eigen::VectorXd trial_z = problem.margins(trial);
        const double value = problem.objective(trial, trial_z);
        if (value <= current - kArmijo * grad.dot(w - trial)) {
          w = std::move(trial);
          z = std::move(trial_z);
          next = value;
          accepted = true;
          eta *= 2.0;
          break;
        }
      }
    }
    if (!accepted) {
      if (armijo) {
        armijo = false;
        t0 = t;
        quiet = 0;
      }
      const double step = base / (1.0 + config.step_decay * (t - t0));
      w = project(Vector(w - step * grad));
      z = problem.margins(w);
      next = problem.objective(w, z);
    }
    if (!std::isfinite(next)) {
      throw NumericalError("non-finite objective at iteration " + std::to_string(t));
    }
    report.objective_trace.push_back(next);
    report.iterations_used = t + 1;
    if (next < best) {
      best = next;
      best_w = w;
    }
    const double change = std::abs(next - current) / std::max(std::abs(current), 1e-300);
    quiet = change < config.tol ? quiet + 1 : 0;
    current = next;
    if (quiet >= kPatience) {
      if (!armijo) break;
      armijo = false;
      t0 = t + 1;
      quiet = 0;
    }
  }
  w = best_w;
  report.final_objective = best;
  return report;
}

}  // namespace

std::string_view to_string(StepRule rule) {
  return rule == StepRule::kBacktracking ? "backtracking" : "diminishing";
}

StepRule parse_step_rule(std::string_view text) {
  if (text == "backtracking") return StepRule::kBacktracking;
  if (text == "diminishing") return StepRule::kDiminishing;
  throw ValidationError("unknown step rule '" + std::string(text) + "' (expected backtracking or diminishing)");
}

void TrainConfig::validate() const {
  if (!(C >= 0.0) || !std::isfinite(C)) throw ValidationError("C must be a finite value >= 0");
  if (max_iters <= 0) throw ValidationError("max_iters must be positive");
  if (!(step_size > 0.0)) throw ValidationError("step_size must be positive");
  if (!(step_decay >= 0.0 && step_decay <= 1.0)) {
    throw ValidationError("step_decay must lie in [0, 1]");
  }
  if (!(feas_eps > 0.0)) throw ValidationError("feas_eps must be positive");
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
}

double hsvm_objective(const Vector& w, const Eigen::MatrixXd& points, std::span<const int> y,
                      double C) {
  check_labels(points, y);
  if (w.size() != points.cols()) throw DimensionError("hsvm_objective: weight length mismatch");
  const HsvmProblem problem(points, y, C);
  return problem.objective(w, problem.margins(w));
}

Vector hsvm_gradient(const Vector& w, const Eigen::MatrixXd& points, std::span<const int> y,
                     double C) {
  check_labels(points, y);
  if (w.size() != points.cols()) throw DimensionError("hsvm_gradient: weight length mismatch");
  const HsvmProblem problem(points, y, C);
  return problem.gradient(w, problem.margins(w));
}

Vector project_feasible(const Vector& w, double feas_eps) {
  if (minkowski_inner(w, w) <= -feas_eps) return w;
  Vector out = w;
  const Eigen::Index n = w.size() - 1;
  auto spatial = out.tail(n);
  double spatial_sq = spatial.squaredNorm();
  if (spatial_sq <= feas_eps) {
    const double target = std::sqrt(2.0 * feas_eps);
    if (spatial_sq > 0.0) {
      spatial *= target / std::sqrt(spatial_sq);
    } else {
      spatial.setZero();
      spatial[0] = target;
    }
    spatial_sq = spatial.squaredNorm();
  }
  // For |w_{1:n}|^2 >> feas_eps the subtraction would round away; keep a gap
  // that is representable relative to the spatial norm.
  const double gap = std::max(feas_eps, 8.0 * std::numeric_limits<double>::epsilon() * spatial_sq);
  out[0] = std::copysign(std::sqrt(std::max(spatial_sq - gap, 0.0)), w[0]);
  return out;
}

double euclidean_svm_objective(const Vector& w, const Eigen::MatrixXd& features,
                               std::span<const int> y, double C) {
  check_labels(features, y);
  if (w.size() != features.cols() + 1) {
    throw DimensionError("euclidean_svm_objective: expected features + bias weights");
  }
  const EuclideanProblem problem(features, y, C);
  return problem.objective(w, problem.margins(w));
}

EuclideanFit euclidean_svm_train(const Eigen::MatrixXd& features, std::span<const int> y,
                                 const TrainConfig& config) {
  config.validate();
  check_labels(features, y);
  const EuclideanProblem problem(features, y, config.C);
  Vector w = Vector::Zero(features.cols() + 1);
  TrainReport report = descend(problem, w, config, [](Vector v) { return v; });
  return {std::move(w), std::move(report)};
}

Vector warm_start_from_euclidean(const Vector& w_euc, Eigen::Index ambient_dim, double feas_eps) {
  if (w_euc.size() != ambient_dim + 1) {
    throw DimensionError("warm start expects " + std::to_string(ambient_dim + 1) +
                         " Euclidean weights (ambient + bias), got " +
                         std::to_string(w_euc.size()));
  }
  Vector w = -w_euc.head(ambient_dim);
  w[0] = w_euc[0];
  return project_feasible(w, feas_eps);
}

HsvmFit hsvm_train(const Eigen::MatrixXd& points, std::span<const int> y, const TrainConfig& config) {
  config.validate();
  check_labels(points, y);
  if (points.cols() < 2) throw DimensionError("hsvm_train needs at least 2 ambient coordinates");

  const EuclideanFit euclid = euclidean_svm_train(points, y, config);
  Vector w = warm_start_from_euclidean(euclid.weights, points.cols(), config.feas_eps);

  const bool pin = config.pin_time_component;
  auto project = [&](Vector v) {
    if (pin) v[0] = 0.0;
    v = project_feasible(v, config.feas_eps);
    if (pin) v[0] = 0.0;
    return v;
  };
  w = project(std::move(w));

  const HsvmProblem problem(points, y, config.C);
  TrainReport report = descend(problem, w, config, project);
  return {DecisionWeights(std::move(w)), std::move(report)};
}

}  // namespace hsvm

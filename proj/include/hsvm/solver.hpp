#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hsvm/geometry.hpp"

namespace hsvm {

enum class StepRule {
  // Armijo backtracking (step doubles after each accepted move) until it
  // stalls at a hinge kink, then the diminishing schedule from that point.
  kBacktracking,
  kDiminishing,  // step_size / (1 + step_decay t) throughout
};

std::string_view to_string(StepRule rule);
/// Accepts "backtracking" or "diminishing"; throws ValidationError otherwise.
StepRule parse_step_rule(std::string_view text);

struct TrainConfig {
  double C = 1.0;
  int max_iters = 10000;
  double step_size = 0.01;
  double step_decay = 0.01;
  double feas_eps = 1e-8;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  StepRule step_rule = StepRule::kBacktracking;
  // Test mode: hold w_0 at zero so the hyperbolic boundary passes through
  // the base point and the classifier reduces to a Euclidean linear rule.
  bool pin_time_component = false;

  void validate() const;
};

struct TrainReport {
  double final_objective = 0.0;
  int iterations_used = 0;
  std::vector<double> objective_trace;
  double warm_start_objective = 0.0;
};

struct HsvmFit {
  DecisionWeights weights;
  TrainReport report;
};

struct EuclideanFit {
  Vector weights;  // feature weights followed by the bias weight
  TrainReport report;
};

/// Soft-margin hyperbolic SVM objective
///   -1/2 w*w + C sum_j max(0, asinh(1) - asinh(y_j (w*x_j)))
/// over hyperboloid rows `points`. Throws InfeasibleWeightsError if w*w >= 0.
double hsvm_objective(const Vector& w, const Eigen::MatrixXd& points, std::span<const int> y,
                      double C);

/// Ordinary partial derivatives of hsvm_objective with respect to w.
Vector hsvm_gradient(const Vector& w, const Eigen::MatrixXd& points, std::span<const int> y,
                     double C);

/// Moves w into {w*w <= -feas_eps} by adjusting w_0 only, inflating the
/// spatial part first when it is too short to dominate any w_0.
Vector project_feasible(const Vector& w, double feas_eps);

/// 1/2 |w|^2 + C sum_j max(0, 1 - y_j w^T [x_j; 1]).
double euclidean_svm_objective(const Vector& w, const Eigen::MatrixXd& features,
                               std::span<const int> y, double C);

/// Full-batch subgradient descent on euclidean_svm_objective using
/// config.step_rule. Returns the best iterate seen.
EuclideanFit euclidean_svm_train(const Eigen::MatrixXd& features, std::span<const int> y,
                                 const TrainConfig& config);

/// Converts Euclidean weights w' learned on ambient coordinates (bias last)
/// into Minkowski weights with w*x = w'^T x, then projects to feasibility.
Vector warm_start_from_euclidean(const Vector& w_euc, Eigen::Index ambient_dim, double feas_eps);

/// Projected gradient descent from the Euclidean warm start, stepping by
/// config.step_rule. Returns the lowest-objective iterate.
HsvmFit hsvm_train(const Eigen::MatrixXd& points, std::span<const int> y, const TrainConfig& config);

}  // namespace hsvm

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsvm/dataset.hpp"
#include "hsvm/multiclass.hpp"
#include "hsvm/solver.hpp"

namespace hsvm {

/// Average precision, sum over positives of (recall step) x (precision at
/// that rank). Ties in score are ordered by a shuffle seeded with `seed`.
/// Labels are +1 / -1. Returns nullopt when either label is absent.
std::optional<double> aupr(std::span<const double> scores, std::span<const int> labels,
                           std::uint64_t seed = 0);

/// Mann-Whitney AUC: fraction of (positive, negative) pairs ranked
/// correctly, ties counting one half. nullopt when either label is absent.
std::optional<double> auroc(std::span<const double> scores, std::span<const int> labels);

struct EvalReport {
  std::vector<std::string> class_ids;
  // Indexed like class_ids; NaN for excluded classes.
  std::vector<double> per_class_aupr;
  std::vector<double> per_class_auroc;
  double macro_aupr = 0.0;
  double macro_auroc = 0.0;
  double micro_aupr = 0.0;
  double micro_auroc = 0.0;
  std::vector<std::string> excluded_classes;
};

/// Scores a points x classes matrix against the dataset's labels. Classes in
/// `skip` or lacking positives or negatives are excluded. Throws EvaluationError when
/// every class is excluded.
EvalReport evaluate_scores(const Eigen::MatrixXd& scores, const LabeledDataset& holdout,
                           const std::vector<bool>& skip, std::uint64_t seed = 0);

/// Metrics from the model's calibrated probabilities.
EvalReport evaluate(const OvaModel& model, const LabeledDataset& holdout, std::uint64_t seed = 0);

/// Partitions point indices into `folds` groups, greedily balancing each
/// class's positive count across groups. Each index appears exactly once.
std::vector<std::vector<std::size_t>> stratified_folds(const LabeledDataset& data, int folds,
                                                       std::uint64_t seed);

struct CvOptions {
  std::vector<double> c_grid{0.1, 1.0, 10.0};
  int folds = 2;
  int trials = 5;
  std::uint64_t seed = 0;
  TrainConfig train;  // C is overwritten by the grid search
};

struct CvRun {
  int trial = 0;
  int fold = 0;
  double chosen_c = 0.0;
  double macro_aupr = 0.0;
  double macro_auroc = 0.0;
  double micro_aupr = 0.0;
  std::vector<std::string> excluded_classes;
};

struct CvResult {
  Method method = Method::kHyperbolic;
  std::vector<CvRun> runs;                  // trials x folds, trial-major
  std::vector<double> per_trial_macro_aupr;  // mean over folds of each trial
  double mean = 0.0;                        // over per_trial_macro_aupr
  double std = 0.0;                         // sample standard deviation
  std::vector<double> chosen_c;             // one per run
};

/// Repeated k-fold cross-validation. In every outer fold, C is chosen from
/// the grid by an inner 2-fold CV on the training part (macro-AUPR, first
/// grid value wins ties), the model is retrained on the full training part
/// and evaluated on the held-out part. Fold assignments depend only on the
/// data and seed, so two methods run with the same seed are paired.
CvResult cross_validate(const LabeledDataset& data, Method method, const CvOptions& options);

}  // namespace hsvm

#include "hsvm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hsvm/error.hpp"
#include "hsvm/rng.hpp"

namespace hsvm {

std::optional<double> aupr(std::span<const double> scores, std::span<const int> labels,
                           std::uint64_t seed) {
  if (scores.size() != labels.size()) throw DimensionError("aupr: scores and labels differ in length");
  const auto n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  if (n_pos == 0 || n_pos == labels.size()) return std::nullopt;

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  shuffle(order, rng);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  double ap = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (labels[order[k]] == 1) {
      ++hits;
      ap += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  return ap / static_cast<double>(n_pos);
}

std::optional<double> auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DimensionError("auroc: scores and labels differ in length");
  const auto n_pos = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  const double n_neg = static_cast<double>(labels.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) return std::nullopt;

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of (1-based, tie-averaged) ranks of the positives.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) rank_sum += avg_rank;
    }
    i = j;
  }
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

EvalReport evaluate_scores(const Eigen::MatrixXd& scores, const LabeledDataset& holdout,
                           const std::vector<bool>& skip, std::uint64_t seed) {
  if (holdout.size() == 0) throw ValidationError("evaluate: holdout set is empty");
  if (scores.rows() != holdout.size() || scores.cols() != static_cast<Eigen::Index>(holdout.num_classes())) {
    throw DimensionError("evaluate: score matrix does not match the holdout set");
  }

  EvalReport report;
  report.class_ids = holdout.class_ids;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> flat_scores;
  std::vector<int> flat_labels;
  double sum_aupr = 0.0, sum_auroc = 0.0;
  std::size_t included = 0;

  for (std::size_t k = 0; k < holdout.num_classes(); ++k) {
    const std::vector<int> y = holdout.binary_labels(static_cast<int>(k));
    std::vector<double> s(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
      s[j] = scores(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    const bool skipped = k < skip.size() && skip[k];
    const auto ap = skipped ? std::nullopt : aupr(s, y, seed);
    const auto auc = skipped ? std::nullopt : auroc(s, y);
    if (!ap || !auc) {
      report.per_class_aupr.push_back(nan);
      report.per_class_auroc.push_back(nan);
      report.excluded_classes.push_back(holdout.class_ids[k]);
      continue;
    }
    report.per_class_aupr.push_back(*ap);
    report.per_class_auroc.push_back(*auc);
    sum_aupr += *ap;
    sum_auroc += *auc;
    ++included;
    flat_scores.insert(flat_scores.end(), s.begin(), s.end());
    flat_labels.insert(flat_labels.end(), y.begin(), y.end());
  }
  if (included == 0) {
    throw EvaluationError("evaluate: every class is excluded (no class has both positives and negatives)");
  }
  report.macro_aupr = sum_aupr / static_cast<double>(included);
  report.macro_auroc = sum_auroc / static_cast<double>(included);
  report.micro_aupr = aupr(flat_scores, flat_labels, seed).value_or(nan);
  report.micro_auroc = auroc(flat_scores, flat_labels).value_or(nan);
  return report;
}

EvalReport evaluate(const OvaModel& model, const LabeledDataset& holdout, std::uint64_t seed) {
  if (model.class_ids != holdout.class_ids) {
    throw ValidationError("evaluate: model and holdout declare different classes");
  }
  return evaluate_scores(ova_predict(model, holdout), holdout, model.degenerate, seed);
}

std::vector<std::vector<std::size_t>> stratified_folds(const LabeledDataset& data, int folds,
                                                       std::uint64_t seed) {
  if (folds < 2) throw ValidationError("need at least 2 folds");
  const auto n = static_cast<std::size_t>(data.size());
  const auto f = static_cast<std::size_t>(folds);
  const auto class_sizes = data.positives_per_class();

  // Rarest label of each point; unlabelled points sort last.
  std::vector<std::size_t> rarity(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t j = 0; j < n; ++j) {
    for (int c : data.labels[j]) rarity[j] = std::min(rarity[j], class_sizes[static_cast<std::size_t>(c)]);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  shuffle(order, rng);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rarity[a] < rarity[b]; });

  std::vector<std::vector<std::size_t>> per_fold_counts(f, std::vector<std::size_t>(data.num_classes(), 0));
  std::vector<std::vector<std::size_t>> out(f);
  for (std::size_t j : order) {
    std::size_t best = 0;
    std::size_t best_load = std::numeric_limits<std::size_t>::max();
    for (std::size_t g = 0; g < f; ++g) {
      std::size_t load = 0;
      for (int c : data.labels[j]) load += per_fold_counts[g][static_cast<std::size_t>(c)];
      if (load < best_load || (load == best_load && out[g].size() < out[best].size())) {
        best = g;
        best_load = load;
      }
    }
    out[best].push_back(j);
    for (int c : data.labels[j]) ++per_fold_counts[best][static_cast<std::size_t>(c)];
  }
  for (auto& fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

namespace {

std::vector<std::size_t> complement(const std::vector<std::vector<std::size_t>>& folds, std::size_t held) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < folds.size(); ++g) {
    if (g != held) out.insert(out.end(), folds[g].begin(), folds[g].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Inner 2-fold CV on `train`; returns the grid value with the best mean
// macro-AUPR on raw scores (Platt scaling cannot change a per-class ranking).
double select_c(const LabeledDataset& train, Method method, const CvOptions& options, std::uint64_t seed) {
  const auto inner = stratified_folds(train, 2, seed);
  double best_c = options.c_grid.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (double c : options.c_grid) {
    TrainConfig config = options.train;
    config.C = c;
    double total = 0.0;
    int counted = 0;
    for (std::size_t g = 0; g < inner.size(); ++g) {
      const LabeledDataset fit = train.subset(complement(inner, g));
      const LabeledDataset val = train.subset(inner[g]);
      if (fit.size() == 0 || val.size() == 0) continue;
      const OvaModel model = ova_train(fit, config, method, /*calibrate=*/false);
      try {
        total += evaluate_scores(ova_scores(model, val), val, model.degenerate, seed).macro_aupr;
        ++counted;
      } catch (const EvaluationError&) {
        // every class excluded in this inner fold
      }
    }
    if (counted > 0 && total / counted > best_score) {
      best_score = total / counted;
      best_c = c;
    }
  }
  return best_c;
}

}  // namespace

CvResult cross_validate(const LabeledDataset& data, Method method, const CvOptions& options) {
  if (options.c_grid.empty()) throw ValidationError("cross_validate: empty C grid");
  if (options.folds < 2) throw ValidationError("cross_validate: need at least 2 folds");
  if (options.trials < 1) throw ValidationError("cross_validate: need at least 1 trial");

  CvResult result;
  result.method = method;
  for (int trial = 0; trial < options.trials; ++trial) {
    const auto t = static_cast<std::uint64_t>(trial);
    const auto folds = stratified_folds(data, options.folds, derive_seed(options.seed, {t}));
    double trial_sum = 0.0;
    for (int fold = 0; fold < options.folds; ++fold) {
      const auto g = static_cast<std::size_t>(fold);
      const std::uint64_t run_seed = derive_seed(options.seed, {t, g});
      const LabeledDataset train = data.subset(complement(folds, g));
      const LabeledDataset holdout = data.subset(folds[g]);

      CvRun run;
      run.trial = trial;
      run.fold = fold;
      run.chosen_c = select_c(train, method, options, derive_seed(run_seed, {1}));
      TrainConfig config = options.train;
      config.C = run.chosen_c;
      config.seed = derive_seed(run_seed, {2});
      const OvaModel model = ova_train(train, config, method);
      const EvalReport report = evaluate(model, holdout, derive_seed(run_seed, {3}));
      run.macro_aupr = report.macro_aupr;
      run.macro_auroc = report.macro_auroc;
      run.micro_aupr = report.micro_aupr;
      run.excluded_classes = report.excluded_classes;
      trial_sum += run.macro_aupr;
      result.chosen_c.push_back(run.chosen_c);
      result.runs.push_back(std::move(run));
    }
    result.per_trial_macro_aupr.push_back(trial_sum / options.folds);
  }

  const auto& v = result.per_trial_macro_aupr;
  const double n = static_cast<double>(v.size());
  result.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - result.mean) * (x - result.mean);
  result.std = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return result;
}

}  // namespace hsvm

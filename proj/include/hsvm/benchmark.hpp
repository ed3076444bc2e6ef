#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hsvm/eval.hpp"
#include "hsvm/io.hpp"
#include "hsvm/multiclass.hpp"
#include "hsvm/synth.hpp"

namespace hsvm {

struct GaussianSource {
  int count = 0;  // datasets to generate
  GaussianMixtureSpec spec;  // seed is replaced per dataset
};

struct PsSource {
  int networks = 0;
  int nodes = 500;
  double avg_degree = 4.0;
  double gamma = 2.25;
  int labels = 10;
  std::vector<std::pair<int, int>> size_ranges{{20, 50}};
  double propagate_prob = 0.8;
  int max_attempts = 1000;
  int repeats = 1;  // label sets drawn per (network, size range)
  bool exact_distance = false;
};

struct BenchmarkConfig {
  GaussianSource gaussian;
  PsSource ps;
  std::vector<std::string> inputs;  // dataset files
  std::vector<Method> methods{Method::kHyperbolic, Method::kEuclidean};
  CvOptions cv;

  void validate() const;
};

Json to_json(const BenchmarkConfig& config);
BenchmarkConfig benchmark_config_from_json(const Json& j);

struct NamedDataset {
  std::string name;
  LabeledDataset data;
};

/// Generated datasets first (Gaussian, then PS), then input files, each
/// seeded from the config seed and its position.
std::vector<NamedDataset> benchmark_datasets(const BenchmarkConfig& config);

/// Cross-validates every method on every dataset. With both methods present
/// the summary adds per-dataset differences (hyperbolic - euclidean) and a
/// one-sided paired t-test over the per-dataset means. Progress lines go to
/// `log` when given; the returned document holds no timing information.
Json run_benchmark(const BenchmarkConfig& config, std::ostream* log = nullptr);

}  // namespace hsvm

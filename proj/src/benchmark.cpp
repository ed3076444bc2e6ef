#include "hsvm/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "hsvm/error.hpp"
#include "hsvm/format.hpp"
#include "hsvm/rng.hpp"
#include "hsvm/stats.hpp"

namespace hsvm {
namespace {

enum SeedStream : std::uint64_t { kGaussianStream = 1, kPsNetworkStream = 2, kPsLabelStream = 3, kCvStream = 4 };

}  // namespace

void BenchmarkConfig::validate() const {
  if (methods.empty()) throw ValidationError("benchmark needs at least one method");
  if (cv.folds < 2) throw ValidationError("benchmark needs folds >= 2");
  if (cv.trials < 1) throw ValidationError("benchmark needs trials >= 1");
  if (cv.c_grid.empty()) throw ValidationError("benchmark needs a non-empty C grid");
  for (double c : cv.c_grid) {
    if (!(c > 0.0)) throw ValidationError("C grid values must be positive");
  }
  if (gaussian.count < 0 || ps.networks < 0) throw ValidationError("dataset counts must be non-negative");
  if (gaussian.count == 0 && ps.networks == 0 && inputs.empty()) {
    throw ValidationError("benchmark has no datasets (generate some or pass input files)");
  }
  if (gaussian.count > 0) gaussian.spec.validate();
  if (ps.networks > 0) {
    if (ps.size_ranges.empty()) throw ValidationError("PS benchmark needs at least one size range");
    if (ps.repeats < 1) throw ValidationError("PS repeats must be positive");
  }
  TrainConfig probe = cv.train;
  probe.C = cv.c_grid.front();
  probe.validate();
}

Json to_json(const BenchmarkConfig& config) {
  Json ranges = Json::array();
  for (const auto& [lo, hi] : config.ps.size_ranges) ranges.push_back(Json::array({lo, hi}));
  Json methods = Json::array();
  for (Method m : config.methods) methods.push_back(std::string(to_string(m)));
  Json train = to_json(config.cv.train);
  train.erase("C");
  train.erase("seed");
  return Json{{"gaussian",
               {{"count", config.gaussian.count},
                {"classes", config.gaussian.spec.num_classes},
                {"per_class", config.gaussian.spec.points_per_class},
                {"centroid_variance", config.gaussian.spec.centroid_variance},
                {"component_variance", config.gaussian.spec.component_variance},
                {"dim", config.gaussian.spec.dim}}},
              {"ps",
               {{"networks", config.ps.networks},
                {"nodes", config.ps.nodes},
                {"avg_degree", config.ps.avg_degree},
                {"gamma", config.ps.gamma},
                {"labels", config.ps.labels},
                {"size_ranges", std::move(ranges)},
                {"propagate_prob", config.ps.propagate_prob},
                {"max_attempts", config.ps.max_attempts},
                {"repeats", config.ps.repeats},
                {"exact_distance", config.ps.exact_distance}}},
              {"inputs", config.inputs},
              {"methods", std::move(methods)},
              {"c_grid", config.cv.c_grid},
              {"folds", config.cv.folds},
              {"trials", config.cv.trials},
              {"seed", config.cv.seed},
              {"train", std::move(train)}};
}

BenchmarkConfig benchmark_config_from_json(const Json& j) {
  try {
    BenchmarkConfig c;
    if (j.contains("gaussian")) {
      const Json& g = j.at("gaussian");
      c.gaussian.count = g.value("count", c.gaussian.count);
      c.gaussian.spec.num_classes = g.value("classes", c.gaussian.spec.num_classes);
      c.gaussian.spec.points_per_class = g.value("per_class", c.gaussian.spec.points_per_class);
      c.gaussian.spec.centroid_variance = g.value("centroid_variance", c.gaussian.spec.centroid_variance);
      c.gaussian.spec.component_variance = g.value("component_variance", c.gaussian.spec.component_variance);
      c.gaussian.spec.dim = g.value("dim", c.gaussian.spec.dim);
    }
    if (j.contains("ps")) {
      const Json& p = j.at("ps");
      c.ps.networks = p.value("networks", c.ps.networks);
      c.ps.nodes = p.value("nodes", c.ps.nodes);
      c.ps.avg_degree = p.value("avg_degree", c.ps.avg_degree);
      c.ps.gamma = p.value("gamma", c.ps.gamma);
      c.ps.labels = p.value("labels", c.ps.labels);
      if (p.contains("size_ranges")) {
        c.ps.size_ranges.clear();
        for (const auto& r : p.at("size_ranges")) c.ps.size_ranges.emplace_back(r.at(0).get<int>(), r.at(1).get<int>());
      }
      c.ps.propagate_prob = p.value("propagate_prob", c.ps.propagate_prob);
      c.ps.max_attempts = p.value("max_attempts", c.ps.max_attempts);
      c.ps.repeats = p.value("repeats", c.ps.repeats);
      c.ps.exact_distance = p.value("exact_distance", c.ps.exact_distance);
    }
    c.inputs = j.value("inputs", c.inputs);
    if (j.contains("methods")) {
      c.methods.clear();
      for (const auto& m : j.at("methods")) c.methods.push_back(parse_method(m.get<std::string>()));
    }
    c.cv.c_grid = j.value("c_grid", c.cv.c_grid);
    c.cv.folds = j.value("folds", c.cv.folds);
    c.cv.trials = j.value("trials", c.cv.trials);
    c.cv.seed = j.value("seed", c.cv.seed);
    if (j.contains("train")) c.cv.train = train_config_from_json(j.at("train"), c.cv.train);
    c.validate();
    return c;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed benchmark config: ") + e.what());
  }
}

std::vector<NamedDataset> benchmark_datasets(const BenchmarkConfig& config) {
  std::vector<NamedDataset> out;
  const std::uint64_t seed = config.cv.seed;
  for (int i = 0; i < config.gaussian.count; ++i) {
    GaussianMixtureSpec spec = config.gaussian.spec;
    spec.seed = derive_seed(seed, {kGaussianStream, static_cast<std::uint64_t>(i)});
    out.push_back({"gaussian-" + std::to_string(i), gen_gaussian_mixture(spec)});
  }
  const PsSource& ps = config.ps;
  for (int i = 0; i < ps.networks; ++i) {
    const auto ii = static_cast<std::uint64_t>(i);
    const std::uint64_t net_seed = derive_seed(seed, {kPsNetworkStream, ii});
    Rng net_rng(net_seed);
    const PsNetwork net = ps_generate(ps.nodes, ps.avg_degree, ps.gamma, 0.0, net_rng,
                                      ps.exact_distance ? PsDistance::kExact : PsDistance::kApproximate);
    for (std::size_t r = 0; r < ps.size_ranges.size(); ++r) {
      for (int rep = 0; rep < ps.repeats; ++rep) {
        const std::uint64_t label_seed = derive_seed(seed, {kPsLabelStream, ii, r, static_cast<std::uint64_t>(rep)});
        Rng label_rng(label_seed);
        const auto labels = propagate_labels(net, ps.labels, ps.size_ranges[r], ps.propagate_prob,
                                             ps.max_attempts, label_rng);
        const auto& [lo, hi] = ps.size_ranges[r];
        LabeledDataset data = ps_dataset(net, labels);
        data.metadata["network_seed"] = std::to_string(net_seed);
        data.metadata["label_seed"] = std::to_string(label_seed);
        out.push_back({"ps-" + std::to_string(i) + "-size" + std::to_string(lo) + "-" + std::to_string(hi) +
                           "-rep" + std::to_string(rep),
                       std::move(data)});
      }
    }
  }
  for (const std::string& path : config.inputs) {
    out.push_back({path, read_dataset(path)});
  }
  return out;
}

Json run_benchmark(const BenchmarkConfig& config, std::ostream* log) {
  config.validate();
  const auto datasets = benchmark_datasets(config);

  CvOptions cv = config.cv;
  cv.seed = derive_seed(config.cv.seed, {kCvStream});

  const auto has = [&](Method m) {
    return std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end();
  };
  const bool paired = has(Method::kHyperbolic) && has(Method::kEuclidean);

  Json per_dataset = Json::array();
  std::vector<double> hyperbolic_means, euclidean_means;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    const NamedDataset& ds = datasets[d];
    Json provenance = Json::object();
    for (const auto& [k, v] : ds.data.metadata) provenance[k] = v;
    Json results = Json::object();
    double mean_h = 0.0, mean_e = 0.0;
    for (Method m : config.methods) {
      CvResult r;
      try {
        r = cross_validate(ds.data, m, cv);
      } catch (const Error& e) {
        throw Error("dataset " + ds.name + ", method " + std::string(to_string(m)) + ": " + e.what());
      }
      if (log) {
        *log << "[" << d + 1 << "/" << datasets.size() << "] " << ds.name << " " << to_string(m)
             << " macro-AUPR " << format_real(r.mean) << " +- " << format_real(r.std) << '\n';
      }
      (m == Method::kHyperbolic ? mean_h : mean_e) = r.mean;
      results[std::string(to_string(m))] = to_json(r);
    }
    Json entry{{"name", ds.name},
               {"points", ds.data.size()},
               {"classes", ds.data.num_classes()},
               {"provenance", std::move(provenance)},
               {"results", std::move(results)}};
    if (paired) {
      entry["difference"] = mean_h - mean_e;
      hyperbolic_means.push_back(mean_h);
      euclidean_means.push_back(mean_e);
    }
    per_dataset.push_back(std::move(entry));
  }

  Json summary{{"format", "hsvm-benchmark"},
               {"version", kFormatVersion},
               {"config", to_json(config)},
               {"datasets", std::move(per_dataset)}};
  if (paired) {
    const auto mean_of = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return s / static_cast<double>(v.size());
    };
    Json comparison{{"hyperbolic_mean", mean_of(hyperbolic_means)},
                    {"euclidean_mean", mean_of(euclidean_means)},
                    {"mean_difference", mean_of(hyperbolic_means) - mean_of(euclidean_means)},
                    {"datasets", hyperbolic_means.size()}};
    if (hyperbolic_means.size() >= 2) {
      const PairedTTest t = paired_t_test(hyperbolic_means, euclidean_means);
      comparison["t_test"] = Json{{"alternative", "hyperbolic > euclidean"},
                                  {"n", t.n},
                                  {"mean_difference", t.mean_diff},
                                  {"sd_difference", t.sd_diff},
                                  {"t", std::isfinite(t.t) ? Json(t.t) : Json(t.t > 0 ? "inf" : "-inf")},
                                  {"p_one_sided", t.p_one_sided}};
    }
    summary["comparison"] = std::move(comparison);
  }
  return summary;
}

}  // namespace hsvm

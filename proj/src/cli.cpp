#include "hsvm/cli.hpp"

#include <CLI11.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hsvm/benchmark.hpp"
#include "hsvm/error.hpp"
#include "hsvm/eval.hpp"
#include "hsvm/format.hpp"
#include "hsvm/io.hpp"
#include "hsvm/multiclass.hpp"
#include "hsvm/synth.hpp"

namespace hsvm {
namespace {

std::pair<int, int> parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("size range must look like MIN,MAX: " + text);
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ValidationError("size range must look like MIN,MAX: " + text);
  }
}

void add_train_options(CLI::App* cmd, TrainConfig& config) {
  cmd->add_option("--max-iters", config.max_iters, "Gradient iterations per binary problem")->capture_default_str();
  cmd->add_option("--step-size", config.step_size, "Initial step size")->capture_default_str();
  cmd->add_option("--step-decay", config.step_decay, "Step decay for the diminishing rule: step / (1 + decay t)")
      ->capture_default_str();
  cmd->add_option_function<std::string>(
         "--step-rule", [&config](const std::string& v) { config.step_rule = parse_step_rule(v); },
         "Step rule: backtracking (default) or diminishing")
      ->check(CLI::IsMember({"backtracking", "diminishing"}));
  cmd->add_option("--feas-eps", config.feas_eps, "Keep w*w <= -feas_eps")->capture_default_str();
  cmd->add_option("--tol", config.tol, "Relative objective change stopping threshold")->capture_default_str();
}

struct GaussianGenArgs {
  GaussianMixtureSpec spec;
  std::string out;
};

struct PsGenArgs {
  int nodes = 500;
  double avg_degree = 4.0;
  double gamma = 2.25;
  double temperature = 0.0;
  int labels = 10;
  std::string size_range = "20,50";
  double prop = 0.8;
  int max_attempts = 1000;
  bool exact = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string network_out;
};

struct TrainArgs {
  std::string data;
  std::string method = "hyperbolic";
  TrainConfig config;
  std::string out;
};

struct ModelDataArgs {
  std::string model;
  std::string data;
  std::uint64_t seed = 0;
  std::string out;
};

struct BenchmarkArgs {
  std::string config_file;
  int gaussian = 0;
  GaussianMixtureSpec spec;
  int ps_networks = 0;
  int ps_nodes = 500;
  int ps_labels = 10;
  std::vector<std::string> ps_ranges{"20,50"};
  double ps_prop = 0.8;
  int ps_repeats = 1;
  std::vector<std::string> inputs;
  std::vector<std::string> methods{"hyperbolic", "euclidean"};
  std::vector<double> c_grid{0.1, 1.0, 10.0};
  int folds = 2;
  int trials = 5;
  std::uint64_t seed = 0;
  TrainConfig train;
  std::string out;
};

void gen_gaussian(const GaussianGenArgs& a, std::ostream& out) {
  const LabeledDataset data = gen_gaussian_mixture(a.spec);
  write_json(a.out, to_json(data));
  out << "wrote " << data.size() << " points in " << data.num_classes() << " classes to " << a.out << '\n';
}

void gen_ps(const PsGenArgs& a, std::ostream& out) {
  Rng rng(a.seed);
  const PsNetwork net = ps_generate(a.nodes, a.avg_degree, a.gamma, a.temperature, rng,
                                    a.exact ? PsDistance::kExact : PsDistance::kApproximate);
  const LabelAssignment labels =
      propagate_labels(net, a.labels, parse_range(a.size_range), a.prop, a.max_attempts, rng);
  LabeledDataset data = ps_dataset(net, labels);
  data.metadata["seed"] = std::to_string(a.seed);
  data.metadata["distance"] = a.exact ? "exact" : "approximate";
  write_json(a.out, to_json(data));
  out << "wrote " << data.size() << " nodes, " << net.edges.size() << " edges, " << labels.members.size()
      << " labels to " << a.out << '\n';
  if (!a.network_out.empty()) {
    Json doc = to_json(net, labels);
    doc["seed"] = a.seed;
    write_json(a.network_out, doc);
    out << "wrote network to " << a.network_out << '\n';
  }
}

void train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  const Method method = parse_method(a.method);
  const LabeledDataset data = read_dataset(a.data);
  const OvaModel model = ova_train(data, a.config, method);
  for (const std::string& w : model.warnings) err << "warning: " << w << '\n';
  Json doc = to_json(model);
  doc["provenance"] = Json{{"data", a.data}, {"data_metadata", data.metadata}};
  write_json(a.out, doc);
  out << "wrote " << to_string(model.method) << " model with " << model.class_ids.size() << " classes to "
      << a.out << '\n';
}

void predict(const ModelDataArgs& a, std::ostream& out) {
  const OvaModel model = read_model(a.model);
  const LabeledDataset data = read_dataset(a.data);
  Json doc = probabilities_to_json(model, ova_predict(model, data));
  doc["provenance"] = Json{{"model", a.model}, {"data", a.data}};
  write_json(a.out, doc);
  out << "wrote " << data.size() << " x " << model.class_ids.size() << " probabilities to " << a.out << '\n';
}

void eval(const ModelDataArgs& a, std::ostream& out) {
  const OvaModel model = read_model(a.model);
  const LabeledDataset data = read_dataset(a.data);
  const EvalReport report = evaluate(model, data, a.seed);
  Json doc = to_json(report);
  doc["provenance"] = Json{{"model", a.model}, {"data", a.data}, {"seed", a.seed}};
  write_json(a.out, doc);
  out << "macro-AUPR " << format_real(report.macro_aupr) << ", micro-AUPR " << format_real(report.micro_aupr)
      << " (" << report.excluded_classes.size() << " classes excluded)\n";
}

BenchmarkConfig resolve_benchmark(const BenchmarkArgs& a) {
  if (!a.config_file.empty()) return benchmark_config_from_json(read_json(a.config_file));
  BenchmarkConfig c;
  c.gaussian.count = a.gaussian;
  c.gaussian.spec = a.spec;
  c.ps.networks = a.ps_networks;
  c.ps.nodes = a.ps_nodes;
  c.ps.labels = a.ps_labels;
  c.ps.size_ranges.clear();
  for (const auto& r : a.ps_ranges) c.ps.size_ranges.push_back(parse_range(r));
  c.ps.propagate_prob = a.ps_prop;
  c.ps.repeats = a.ps_repeats;
  c.inputs = a.inputs;
  c.methods.clear();
  for (const auto& m : a.methods) c.methods.push_back(parse_method(m));
  c.cv.c_grid = a.c_grid;
  c.cv.folds = a.folds;
  c.cv.trials = a.trials;
  c.cv.seed = a.seed;
  c.cv.train = a.train;
  c.validate();
  return c;
}

void benchmark(const BenchmarkArgs& a, std::ostream& out, std::ostream& err) {
  const BenchmarkConfig config = resolve_benchmark(a);
  const Json summary = run_benchmark(config, &err);
  write_json(a.out, summary);
  out << "wrote benchmark summary for " << summary.at("datasets").size() << " datasets to " << a.out << '\n';
  if (summary.contains("comparison")) {
    const Json& c = summary.at("comparison");
    out << "hyperbolic " << format_real(c.at("hyperbolic_mean").get<double>()) << " vs euclidean "
        << format_real(c.at("euclidean_mean").get<double>());
    if (c.contains("t_test")) out << ", one-sided p = " << format_real(c.at("t_test").at("p_one_sided").get<double>());
    out << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic and Euclidean linear SVMs on hyperbolic embeddings", "hsvm"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen->require_subcommand(1);

  GaussianGenArgs gauss;
  auto* gen_g = gen->add_subcommand("gaussian", "Hyperbolic Gaussian mixture in the Poincare disk");
  gen_g->add_option("--classes", gauss.spec.num_classes)->capture_default_str();
  gen_g->add_option("--per-class", gauss.spec.points_per_class)->capture_default_str();
  gen_g->add_option("--centroid-var", gauss.spec.centroid_variance)->capture_default_str();
  gen_g->add_option("--component-var", gauss.spec.component_variance)->capture_default_str();
  gen_g->add_option("--dim", gauss.spec.dim)->capture_default_str();
  gen_g->add_option("--seed", gauss.spec.seed)->capture_default_str();
  gen_g->add_option("--out,-o", gauss.out, "Dataset file to write")->required();

  PsGenArgs ps;
  auto* gen_p = gen->add_subcommand("ps", "Popularity-vs-similarity network with propagated labels");
  gen_p->add_option("--nodes", ps.nodes)->capture_default_str();
  gen_p->add_option("--avg-degree", ps.avg_degree)->capture_default_str();
  gen_p->add_option("--gamma", ps.gamma)->capture_default_str();
  gen_p->add_option("--temperature", ps.temperature)->capture_default_str();
  gen_p->add_option("--labels", ps.labels)->capture_default_str();
  gen_p->add_option("--size-range", ps.size_range, "MIN,MAX accepted label size")->capture_default_str();
  gen_p->add_option("--prop", ps.prop, "Propagation probability")->capture_default_str();
  gen_p->add_option("--max-attempts", ps.max_attempts)->capture_default_str();
  gen_p->add_flag("--exact-distance", ps.exact, "Attach by exact hyperbolic distance");
  gen_p->add_option("--seed", ps.seed)->capture_default_str();
  gen_p->add_option("--out,-o", ps.out, "Dataset file to write")->required();
  gen_p->add_option("--network-out", ps.network_out, "Also write nodes, edges and label sets");

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train a one-vs-all model");
  train_cmd->add_option("--data,-d", tr.data)->required();
  train_cmd->add_option("--method,-m", tr.method, "hyperbolic | euclidean")->capture_default_str();
  train_cmd->add_option("--C,-C", tr.config.C)->capture_default_str();
  train_cmd->add_option("--seed", tr.config.seed)->capture_default_str();
  add_train_options(train_cmd, tr.config);
  train_cmd->add_option("--out,-o", tr.out)->required();

  ModelDataArgs pr;
  auto* predict_cmd = app.add_subcommand("predict", "Per-class probabilities for a dataset");
  predict_cmd->add_option("--model", pr.model)->required();
  predict_cmd->add_option("--data,-d", pr.data)->required();
  predict_cmd->add_option("--out,-o", pr.out)->required();

  ModelDataArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "AUPR / AUROC of a model on a labelled dataset");
  eval_cmd->add_option("--model", ev.model)->required();
  eval_cmd->add_option("--data,-d", ev.data)->required();
  eval_cmd->add_option("--seed", ev.seed, "Tie-breaking seed")->capture_default_str();
  eval_cmd->add_option("--out,-o", ev.out)->required();

  BenchmarkArgs bm;
  auto* bench = app.add_subcommand("benchmark", "Repeated cross-validation of both methods");
  bench->add_option("--config", bm.config_file, "JSON benchmark config (overrides the flags below)");
  bench->add_option("--gaussian", bm.gaussian, "Gaussian-mixture datasets to generate")->capture_default_str();
  bench->add_option("--classes", bm.spec.num_classes)->capture_default_str();
  bench->add_option("--per-class", bm.spec.points_per_class)->capture_default_str();
  bench->add_option("--centroid-var", bm.spec.centroid_variance)->capture_default_str();
  bench->add_option("--component-var", bm.spec.component_variance)->capture_default_str();
  bench->add_option("--ps", bm.ps_networks, "PS networks to generate")->capture_default_str();
  bench->add_option("--ps-nodes", bm.ps_nodes)->capture_default_str();
  bench->add_option("--ps-labels", bm.ps_labels)->capture_default_str();
  bench->add_option("--ps-size-range", bm.ps_ranges, "MIN,MAX (repeatable)")->capture_default_str();
  bench->add_option("--ps-prop", bm.ps_prop)->capture_default_str();
  bench->add_option("--ps-repeats", bm.ps_repeats)->capture_default_str();
  bench->add_option("--input", bm.inputs, "Dataset files (repeatable)");
  bench->add_option("--methods", bm.methods)->delimiter(',')->capture_default_str();
  bench->add_option("--c-grid", bm.c_grid)->delimiter(',')->capture_default_str();
  bench->add_option("--folds", bm.folds)->capture_default_str();
  bench->add_option("--trials", bm.trials)->capture_default_str();
  bench->add_option("--seed", bm.seed)->capture_default_str();
  add_train_options(bench, bm.train);
  bench->add_option("--out,-o", bm.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e_stream;
    const int code = app.exit(e, o, e_stream);
    out << o.str();
    err << e_stream.str();
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (gen_g->parsed()) gen_gaussian(gauss, out);
    if (gen_p->parsed()) gen_ps(ps, out);
    if (train_cmd->parsed()) train(tr, out, err);
    if (predict_cmd->parsed()) predict(pr, out);
    if (eval_cmd->parsed()) eval(ev, out);
    if (bench->parsed()) benchmark(bm, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace hsvm

#include "hsvm/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <string>

#include "hsvm/error.hpp"

namespace hsvm {
namespace {

// JSON has no NaN; excluded metrics are written as null.
Json real_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json reals(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(real_or_null(x));
  return out;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

void expect_format(const Json& j, std::string_view format) {
  if (!j.is_object() || !j.contains("format") || j.at("format") != format) {
    throw ValidationError("expected a '" + std::string(format) + "' document");
  }
  if (j.value("version", 0) != kFormatVersion) {
    throw ValidationError("unsupported " + std::string(format) + " version");
  }
}

template <typename Fn>
auto with_context(std::string_view what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw ValidationError("malformed " + std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const TrainConfig& config) {
  return Json{{"C", config.C},
              {"max_iters", config.max_iters},
              {"step_size", config.step_size},
              {"step_decay", config.step_decay},
              {"step_rule", std::string(to_string(config.step_rule))},
              {"feas_eps", config.feas_eps},
              {"tol", config.tol},
              {"seed", config.seed}};
}

TrainConfig train_config_from_json(const Json& j, TrainConfig defaults) {
  return with_context("train config", [&] {
    TrainConfig c = defaults;
    c.C = j.value("C", c.C);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.step_size = j.value("step_size", c.step_size);
    c.step_decay = j.value("step_decay", c.step_decay);
    if (j.contains("step_rule")) c.step_rule = parse_step_rule(j.at("step_rule").get<std::string>());
    c.feas_eps = j.value("feas_eps", c.feas_eps);
    c.tol = j.value("tol", c.tol);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
  });
}

Json to_json(const LabeledDataset& data) {
  Json points = Json::array();
  for (Eigen::Index r = 0; r < data.points.rows(); ++r) {
    points.push_back(vector_json(data.points.row(r).transpose()));
  }
  Json labels = Json::array();
  for (const auto& l : data.labels) {
    Json ids = Json::array();
    for (int c : l) ids.push_back(data.class_ids[static_cast<std::size_t>(c)]);
    labels.push_back(std::move(ids));
  }
  Json metadata = Json::object();
  for (const auto& [k, v] : data.metadata) metadata[k] = v;
  return Json{{"format", "hsvm-dataset"},
              {"version", kFormatVersion},
              {"model", std::string(to_string(data.model))},
              {"dim", data.dim()},
              {"class_ids", data.class_ids},
              {"points", std::move(points)},
              {"labels", std::move(labels)},
              {"metadata", std::move(metadata)}};
}

LabeledDataset dataset_from_json(const Json& j) {
  expect_format(j, "hsvm-dataset");
  return with_context("dataset", [&] {
    LabeledDataset data;
    data.model = parse_point_model(j.at("model").get<std::string>());
    const Json& points = j.at("points");
    const Eigen::Index extra = data.model == PointModel::kHyperboloid ? 1 : 0;
    Eigen::Index dim;
    if (j.contains("dim")) {
      dim = j.at("dim").get<Eigen::Index>();
    } else if (!points.empty()) {
      dim = static_cast<Eigen::Index>(points.at(0).size()) - extra;
    } else {
      throw ValidationError("dataset without points must declare dim");
    }
    const Eigen::Index cols = dim + extra;
    data.class_ids = j.at("class_ids").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (std::size_t k = 0; k < data.class_ids.size(); ++k) {
      if (!index.emplace(data.class_ids[k], static_cast<int>(k)).second) {
        throw ValidationError("duplicate class id '" + data.class_ids[k] + "'");
      }
    }

    data.points.resize(static_cast<Eigen::Index>(points.size()), cols);
    for (std::size_t r = 0; r < points.size(); ++r) {
      const auto row = points[r].get<std::vector<double>>();
      if (static_cast<Eigen::Index>(row.size()) != cols) {
        throw DimensionError("point " + std::to_string(r) + " has " + std::to_string(row.size()) +
                             " coordinates, expected " + std::to_string(cols));
      }
      for (Eigen::Index c = 0; c < cols; ++c) data.points(static_cast<Eigen::Index>(r), c) = row[static_cast<std::size_t>(c)];
    }

    for (const auto& ids : j.at("labels")) {
      std::vector<int> row;
      for (const auto& id : ids) {
        const auto it = index.find(id.get<std::string>());
        if (it == index.end()) {
          throw ValidationError("label '" + id.get<std::string>() + "' is not a declared class id");
        }
        row.push_back(it->second);
      }
      data.labels.push_back(std::move(row));
    }
    if (j.contains("metadata")) {
      for (const auto& [k, v] : j.at("metadata").items()) {
        data.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    data.validate();
    return data;
  });
}

Json to_json(const OvaModel& model) {
  Json classes = Json::array();
  for (std::size_t k = 0; k < model.class_ids.size(); ++k) {
    classes.push_back(Json{{"id", model.class_ids[k]},
                           {"weights", vector_json(model.weights[k])},
                           {"platt", {{"A", model.platt[k].A}, {"B", model.platt[k].B}}},
                           {"degenerate", static_cast<bool>(model.degenerate[k])}});
  }
  return Json{{"format", "hsvm-model"},
              {"version", kFormatVersion},
              {"geometry", std::string(to_string(model.method))},
              {"dim", model.dim},
              {"config", to_json(model.config)},
              {"classes", std::move(classes)},
              {"warnings", model.warnings}};
}

OvaModel model_from_json(const Json& j) {
  expect_format(j, "hsvm-model");
  return with_context("model", [&] {
    OvaModel model;
    model.method = parse_method(j.at("geometry").get<std::string>());
    model.dim = j.at("dim").get<Eigen::Index>();
    model.config = train_config_from_json(j.at("config"));
    for (const auto& c : j.at("classes")) {
      model.class_ids.push_back(c.at("id").get<std::string>());
      const auto w = c.at("weights").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(w.size()) != model.dim + 1) {
        throw DimensionError("class " + model.class_ids.back() + ": expected " +
                             std::to_string(model.dim + 1) + " weights");
      }
      model.weights.push_back(Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size())));
      model.platt.push_back({c.at("platt").at("A").get<double>(), c.at("platt").at("B").get<double>()});
      model.degenerate.push_back(c.value("degenerate", false));
    }
    model.warnings = j.value("warnings", std::vector<std::string>{});
    return model;
  });
}

Json to_json(const EvalReport& report) {
  return Json{{"format", "hsvm-eval"},
              {"version", kFormatVersion},
              {"class_ids", report.class_ids},
              {"per_class_aupr", reals(report.per_class_aupr)},
              {"per_class_auroc", reals(report.per_class_auroc)},
              {"macro_aupr", real_or_null(report.macro_aupr)},
              {"macro_auroc", real_or_null(report.macro_auroc)},
              {"micro_aupr", real_or_null(report.micro_aupr)},
              {"micro_auroc", real_or_null(report.micro_auroc)},
              {"excluded_classes", report.excluded_classes}};
}

Json to_json(const CvResult& result) {
  Json runs = Json::array();
  for (const CvRun& r : result.runs) {
    runs.push_back(Json{{"trial", r.trial},
                        {"fold", r.fold},
                        {"chosen_C", r.chosen_c},
                        {"macro_aupr", real_or_null(r.macro_aupr)},
                        {"macro_auroc", real_or_null(r.macro_auroc)},
                        {"micro_aupr", real_or_null(r.micro_aupr)},
                        {"excluded_classes", r.excluded_classes}});
  }
  return Json{{"method", std::string(to_string(result.method))},
              {"per_trial_macro_aupr", reals(result.per_trial_macro_aupr)},
              {"mean", real_or_null(result.mean)},
              {"std", real_or_null(result.std)},
              {"chosen_C", result.chosen_c},
              {"runs", std::move(runs)}};
}

Json to_json(const PsNetwork& net, const LabelAssignment& labels) {
  Json nodes = Json::array();
  for (const PsNode& n : net.nodes) {
    nodes.push_back(Json{{"t", n.creation_index}, {"r", n.radius}, {"r_birth", n.birth_radius}, {"theta", n.theta}});
  }
  Json edges = Json::array();
  for (const auto& [a, b] : net.edges) edges.push_back(Json::array({a, b}));
  Json label_sets = Json::array();
  for (std::size_t k = 0; k < labels.members.size(); ++k) {
    label_sets.push_back(Json{{"id", std::to_string(k)}, {"pioneer", labels.pioneers[k]}, {"nodes", labels.members[k]}});
  }
  return Json{{"format", "hsvm-ps-network"},
              {"version", kFormatVersion},
              {"params",
               {{"nodes", net.params.num_nodes},
                {"avg_degree", net.params.avg_degree},
                {"gamma", net.params.gamma},
                {"temperature", net.params.temperature},
                {"m", net.params.m},
                {"beta", net.params.beta}}},
              {"size_range", Json::array({labels.size_range.first, labels.size_range.second})},
              {"propagate_prob", labels.propagate_prob},
              {"nodes", std::move(nodes)},
              {"edges", std::move(edges)},
              {"labels", std::move(label_sets)}};
}

Json probabilities_to_json(const OvaModel& model, const Eigen::MatrixXd& probs) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < probs.rows(); ++r) rows.push_back(vector_json(probs.row(r).transpose()));
  return Json{{"format", "hsvm-predictions"},
              {"version", kFormatVersion},
              {"geometry", std::string(to_string(model.method))},
              {"class_ids", model.class_ids},
              {"probabilities", std::move(rows)}};
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

LabeledDataset read_dataset(const std::filesystem::path& path) {
  try {
    return dataset_from_json(read_json(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

OvaModel read_model(const std::filesystem::path& path) {
  try {
    return model_from_json(read_json(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace hsvm

#pragma once

// Self-describing JSON documents for datasets, models, reports and
// benchmark summaries. Every document carries a "format" tag and version.

#include <filesystem>
#include <json.hpp>

#include "hsvm/dataset.hpp"
#include "hsvm/eval.hpp"
#include "hsvm/multiclass.hpp"
#include "hsvm/solver.hpp"
#include "hsvm/synth.hpp"

namespace hsvm {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const Json& j, TrainConfig defaults = {});

Json to_json(const LabeledDataset& data);
/// Labels are stored as class id strings; rows are validated against the
/// declared model.
LabeledDataset dataset_from_json(const Json& j);

Json to_json(const OvaModel& model);
OvaModel model_from_json(const Json& j);

Json to_json(const EvalReport& report);
Json to_json(const CvResult& result);
Json to_json(const PsNetwork& net, const LabelAssignment& labels);

/// Probability matrix with its class ids.
Json probabilities_to_json(const OvaModel& model, const Eigen::MatrixXd& probs);

Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline; output is byte-stable.
void write_json(const std::filesystem::path& path, const Json& doc);

LabeledDataset read_dataset(const std::filesystem::path& path);
OvaModel read_model(const std::filesystem::path& path);

}  // namespace hsvm

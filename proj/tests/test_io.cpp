#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "hsvm/error.hpp"
#include "hsvm/io.hpp"
#include "hsvm/synth.hpp"

using namespace hsvm;

TEST(Io, DatasetRoundTrip) {
  GaussianMixtureSpec spec;
  spec.points_per_class = 5;
  const LabeledDataset d = gen_gaussian_mixture(spec);
  const LabeledDataset back = dataset_from_json(Json::parse(to_json(d).dump()));
  EXPECT_EQ(back.points, d.points);
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(back.class_ids, d.class_ids);
  EXPECT_EQ(back.metadata, d.metadata);
  EXPECT_EQ(back.model, d.model);
}

TEST(Io, DatasetInOtherModels) {
  for (const char* model : {"hyperboloid", "halfspace"}) {
    Json j{{"format", "hsvm-dataset"},
           {"version", 1},
           {"model", model},
           {"class_ids", {"a"}},
           {"points", Json::array()},
           {"labels", Json::array()}};
    if (std::string(model) == "hyperboloid") {
      j["points"].push_back({std::cosh(1.0), std::sinh(1.0), 0.0});
    } else {
      j["points"].push_back({0.5, 2.0});
    }
    j["labels"].push_back({"a"});
    const LabeledDataset d = dataset_from_json(j);
    EXPECT_EQ(d.dim(), 2);
    EXPECT_EQ(to_hyperboloid_rows(d).cols(), 3);
    EXPECT_EQ(to_ball_rows(d).cols(), 2);
  }
}

TEST(Io, DatasetRejectsBadInput) {
  Json j{{"format", "hsvm-dataset"},
         {"version", 1},
         {"model", "ball"},
         {"class_ids", {"a"}},
         {"points", {{0.5, 0.0}}},
         {"labels", {{"b"}}}};
  EXPECT_THROW(dataset_from_json(j), ValidationError);
  j["labels"] = {{"a"}};
  j["points"] = {{1.5, 0.0}};
  EXPECT_THROW(dataset_from_json(j), ValidationError);
  j["points"] = {{0.5, 0.0}};
  j["format"] = "something-else";
  EXPECT_THROW(dataset_from_json(j), ValidationError);
  j["format"] = "hsvm-dataset";
  j["model"] = "klein";
  EXPECT_THROW(dataset_from_json(j), ValidationError);
}

TEST(Io, ModelRoundTripIsExact) {
  GaussianMixtureSpec spec;
  spec.points_per_class = 15;
  const LabeledDataset d = gen_gaussian_mixture(spec);
  for (Method m : {Method::kHyperbolic, Method::kEuclidean}) {
    const OvaModel model = ova_train(d, TrainConfig{}, m);
    const OvaModel back = model_from_json(Json::parse(to_json(model).dump()));
    EXPECT_EQ(back.method, model.method);
    EXPECT_EQ(back.class_ids, model.class_ids);
    for (std::size_t k = 0; k < model.weights.size(); ++k) {
      EXPECT_EQ(back.weights[k], model.weights[k]);
      EXPECT_EQ(back.platt[k].A, model.platt[k].A);
      EXPECT_EQ(back.platt[k].B, model.platt[k].B);
    }
    EXPECT_EQ(ova_predict(back, d), ova_predict(model, d));
  }
}

TEST(Io, TrainConfigRoundTrip) {
  TrainConfig c;
  c.C = 3.5;
  c.step_rule = StepRule::kDiminishing;
  c.seed = 12345678901234ULL;
  const TrainConfig back = train_config_from_json(to_json(c));
  EXPECT_EQ(back.C, c.C);
  EXPECT_EQ(back.step_rule, c.step_rule);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_THROW(train_config_from_json(Json{{"C", -1.0}}), ValidationError);
  EXPECT_THROW(train_config_from_json(Json{{"step_rule", "newton"}}), ValidationError);
}

TEST(Io, ReadMissingFileFails) {
  EXPECT_THROW(read_json(std::filesystem::path("/nonexistent/file.json")), Error);
}

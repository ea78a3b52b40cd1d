// Copyright 2026 The Featherpipe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "featherpipe/runtime/manifest.h"
#include "featherpipe/runtime/plan.h"
#include "test_values.h"

namespace featherpipe {
namespace {

using testing::CaptureError;
using testing::F;
using testing::I;
using testing::L;
using testing::N;
using testing::S;

// A small fitted bundle, written by hand.
Json BundleJson() {
  return Json::parse(R"({
    "formatVersion": 1,
    "inputs": [
      {"name": "city", "dtype": "string", "shape": []},
      {"name": "genres", "dtype": "string", "shape": [3]},
      {"name": "price", "dtype": "float64", "shape": []}
    ],
    "ops": [
      {"name": "city_idx", "op": "string_index", "inputs": ["city"],
       "outputs": ["city_i"], "params": {"numOOVIndices": 1},
       "state": {"labels": ["paris", "rome"]}},
      {"name": "city_oh", "op": "one_hot", "inputs": ["city"],
       "outputs": ["city_v"], "params": {"dropUnseen": true},
       "state": {"labels": ["paris", "rome"]}},
      {"name": "genre_idx", "op": "string_index", "inputs": ["genres"],
       "outputs": ["genres_i"], "params": {"maskToken": "PAD"},
       "state": {"labels": ["drama", "comedy"]}},
      {"name": "price_fill", "op": "impute", "inputs": ["price"],
       "outputs": ["price_f"], "params": {"strategy": "median", "sentinel": -1},
       "state": {"imputeValue": 50.0}},
      {"name": "price_log", "op": "log_transform", "inputs": ["price_f"],
       "outputs": ["price_l"], "params": {"alpha": 1.0}},
      {"name": "price_vec", "op": "array_assemble", "inputs": ["price_f", "price_l"],
       "outputs": ["pv"], "params": {}},
      {"name": "price_scale", "op": "standard_scale", "inputs": ["pv"],
       "outputs": ["pv_z"], "params": {},
       "state": {"mean": [10.0, 2.0], "std": [5.0, 0.0]}}
    ]})");
}

ExecutablePlan Plan(RowMode mode = RowMode::kStrict) {
  return ExecutablePlan::Load(BundleJson().dump(), mode);
}

Json Output(const ExecutablePlan& plan, const Json& row) {
  return plan.OutputToJson(plan.ExecuteJson(row));
}

const Json kRow = {{"city", "rome"}, {"genres", {"comedy", "PAD", "noir"}}, {"price", -1}};

TEST(PlanTest, ExecutesFittedState) {
  const Json out = Output(Plan(), kRow);
  EXPECT_EQ(out["city_i"], 2);
  EXPECT_EQ(out["city_v"], Json({0.0, 1.0}));
  EXPECT_EQ(out["genres_i"], Json({3, 0, 1}));
  EXPECT_EQ(out["price_f"], 50.0);
  EXPECT_EQ(out["price_l"], std::log(51.0));
  EXPECT_EQ(out["pv_z"], Json({(50.0 - 10.0) / 5.0, 0.0}));
  // Inputs pass through into the output row.
  EXPECT_EQ(out["city"], "rome");
}

TEST(PlanTest, UnseenValuesUseOovAndZeros) {
  Json row = kRow;
  row["city"] = "oslo";
  const Json out = Output(Plan(), row);
  EXPECT_EQ(out["city_i"], 0);
  EXPECT_EQ(out["city_v"], Json({0.0, 0.0}));
}

TEST(PlanTest, OutputFieldsHaveFixedShapes) {
  const ExecutablePlan plan = Plan();
  ASSERT_EQ(plan.input_fields().size(), 3u);
  ASSERT_EQ(plan.output_fields().size(), 10u);
  for (const FieldSpec& f : plan.output_fields()) EXPECT_TRUE(f.shape.IsFixed()) << f.name;
  EXPECT_EQ(plan.output_fields()[4].name, "city_v");
  EXPECT_EQ(plan.output_fields()[4].shape, ShapeSpec::List(2));
}

TEST(PlanTest, StrictRejectsUnknownFieldsLenientIgnoresThem) {
  Json row = kRow;
  row["extra"] = 1;
  const Error e = CaptureError([&] { Plan().ExecuteJson(row); });
  EXPECT_EQ(e.code(), ErrorCode::kRowValidation);
  EXPECT_EQ(e.context().column, "extra");
  EXPECT_EQ(Output(Plan(RowMode::kLenient), row), Output(Plan(), kRow));
}

TEST(PlanTest, MissingFieldsFailInBothModes) {
  Json row = kRow;
  row.erase("price");
  for (RowMode mode : {RowMode::kStrict, RowMode::kLenient}) {
    const Error e = CaptureError([&] { Plan(mode).ExecuteJson(row); });
    EXPECT_EQ(e.code(), ErrorCode::kRowValidation);
    EXPECT_EQ(e.context().column, "price");
  }
}

TEST(PlanTest, NonConformingValuesAreRowErrors) {
  Json row = kRow;
  row["genres"] = {"a", "b"};
  EXPECT_EQ(CaptureError([&] { Plan().ExecuteJson(row); }).code(), ErrorCode::kRowValidation);
  row = kRow;
  row["price"] = "cheap";
  EXPECT_EQ(CaptureError([&] { Plan().ExecuteJson(row); }).code(), ErrorCode::kRowValidation);
  EXPECT_EQ(CaptureError([] { Plan().ExecuteJson(Json::array()); }).code(),
            ErrorCode::kRowValidation);
}

TEST(PlanTest, TransformErrorsCarryStage) {
  Json row = kRow;
  row["price"] = -3.0;
  const Error e = CaptureError([&] { Plan().ExecuteJson(row); });
  EXPECT_EQ(e.code(), ErrorCode::kDomain);
  EXPECT_EQ(e.context().stage, "price_log");
}

TEST(PlanTest, RowMapAndPositionalEntryPointsAgree) {
  const ExecutablePlan plan = Plan();
  const std::vector<Value> positional = {S("paris"), L({S("drama"), N(), S("PAD")}), N()};
  const Row named = {{"price", N()}, {"city", S("paris")},
                     {"genres", L({S("drama"), N(), S("PAD")})}};
  EXPECT_EQ(plan.Execute(positional), plan.Execute(named));
  const std::vector<Value> out = plan.Execute(positional);
  EXPECT_EQ(out[3], I(1));
  EXPECT_EQ(out[5], L({I(2), N(), I(0)}));
  EXPECT_EQ(out[6], F(50.0));
}

TEST(PlanTest, BatchCollectsErrorsPerRow) {
  Json bad = kRow;
  bad["price"] = -3.0;
  const std::vector<Json> rows = {kRow, bad, Json::object(), kRow};
  const BatchResult result = Plan().ExecuteBatch(rows);
  ASSERT_EQ(result.rows.size(), 4u);
  EXPECT_TRUE(result.rows[0].has_value());
  EXPECT_FALSE(result.rows[1].has_value());
  EXPECT_FALSE(result.rows[2].has_value());
  EXPECT_TRUE(result.rows[3].has_value());
  ASSERT_EQ(result.errors.size(), 2u);
  EXPECT_EQ(result.errors[0].index, 1u);
  EXPECT_EQ(result.errors[0].error.code(), ErrorCode::kDomain);
  EXPECT_EQ(result.errors[1].index, 2u);
  EXPECT_EQ(result.errors[1].error.code(), ErrorCode::kRowValidation);
}

TEST(ManifestTest, DocumentIsCanonical) {
  const std::string doc = Plan().ToDocument();
  EXPECT_EQ(ExecutablePlan::Load(doc).ToDocument(), doc);
  // Key order and whitespace in the source do not matter.
  EXPECT_EQ(ExecutablePlan::Load(BundleJson().dump(2)).ToDocument(), doc);
  EXPECT_EQ(WriteManifest(ParseManifest(doc)), doc);
}

ErrorCode LoadError(const std::string& text) {
  return CaptureError([&] { ExecutablePlan::Load(text); }).code();
}

ErrorCode LoadError(const Json& doc) { return LoadError(doc.dump()); }

TEST(ManifestTest, StructuralErrors) {
  const std::string text = BundleJson().dump();
  EXPECT_EQ(LoadError(text.substr(0, text.size() / 2)), ErrorCode::kManifest);
  EXPECT_EQ(LoadError(std::string("")), ErrorCode::kManifest);
  EXPECT_EQ(LoadError(std::string("[]")), ErrorCode::kManifest);
  Json doc = BundleJson();
  doc["formatVersion"] = 99;
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][0]["op"] = "tokenize";
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc.erase("inputs");
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
}

TEST(ManifestTest, AssetErrors) {
  Json doc = BundleJson();
  doc["ops"][0].erase("state");
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][0]["state"]["labels"] = {"a", "a"};
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][2]["state"]["labels"] = {"PAD"};
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][6]["state"]["mean"] = {1.0};
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][3]["state"] = {{"imputeValue", "x"}};
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][4]["state"] = {{"labels", {"a"}}};
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
}

TEST(ManifestTest, WiringErrors) {
  Json doc = BundleJson();
  doc["ops"][4]["inputs"] = {"nowhere"};
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][4]["outputs"] = {"city"};
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][1]["name"] = "city_idx";
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["inputs"][1]["shape"] = {-1};
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
  doc = BundleJson();
  doc["ops"][4]["params"]["alpha"] = "one";
  EXPECT_EQ(LoadError(doc), ErrorCode::kManifest);
}

}  // namespace
}  // namespace featherpipe

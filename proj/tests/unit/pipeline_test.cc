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
#include <algorithm>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "featherpipe/core/murmur3.h"
#include "featherpipe/io/data_io.h"
#include "featherpipe/pipeline/dag.h"
#include "featherpipe/pipeline/export.h"
#include "featherpipe/pipeline/pipeline.h"
#include "featherpipe/pipeline/spec.h"
#include "featherpipe/runtime/plan.h"
#include "test_values.h"

namespace featherpipe {
namespace {

using testing::CaptureError;
using testing::F;
using testing::Field;
using testing::I;
using testing::L;
using testing::N;
using testing::S;

const std::string kData = FEATHERPIPE_TEST_DATA;

PipelineSpec MovieLensSpec() {
  return ParseSpec(ReadTextFile(kData + "/movielens/spec.json"));
}

RecordBatch MovieLensRows(const PipelineSpec& spec) {
  return ReadDataFile(kData + "/movielens/sample.jsonl", spec.inputs, {});
}

std::string Serialize(const RecordBatch& b) {
  std::ostringstream out;
  WriteJsonLines(out, b);
  return out.str();
}

// Minimal spec around one stage reading float column "x".
Json OneStage(const Json& stage) {
  return {{"version", 1},
          {"inputs", {{{"name", "x"}, {"dtype", "float64"}, {"shape", Json::array()}}}},
          {"stages", {stage}}};
}

Json LogStage(const std::string& name, const std::string& in, const std::string& out) {
  return {{"name", name}, {"op", "log_transform"}, {"inputs", {in}},
          {"outputs", {out}}, {"params", {{"alpha", 1.0}}}};
}

TEST(SpecTest, ParsesMinimalAndMovieLensDocuments) {
  const PipelineSpec one = SpecFromJson(OneStage(LogStage("log", "x", "y")));
  ASSERT_EQ(one.stages.size(), 1u);
  EXPECT_EQ(one.stages[0].op, OpKind::kLogTransform);
  const PipelineSpec ml = MovieLensSpec();
  ASSERT_EQ(ml.stages.size(), 5u);
  EXPECT_EQ(ml.stages[0].name, "user_hash_indexer");
  EXPECT_EQ(ml.stages[4].params["maskToken"], "PADDED");
  EXPECT_EQ(ParseSpec(WriteSpec(ml)).stages.size(), 5u);
  EXPECT_EQ(WriteSpec(ParseSpec(WriteSpec(ml))), WriteSpec(ml));
}

TEST(SpecTest, Rejections) {
  Json doc = OneStage(LogStage("a", "x", "y"));
  doc["stages"].push_back(LogStage("a", "y", "z"));
  EXPECT_EQ(CaptureError([&] { SpecFromJson(doc); }).code(), ErrorCode::kValidation);

  EXPECT_EQ(CaptureError([] { ParseSpec("{\"version\": 1, \"inputs\": ["); }).code(),
            ErrorCode::kSpecParse);
  doc = OneStage(LogStage("a", "x", "y"));
  doc["version"] = 2;
  EXPECT_EQ(CaptureError([&] { SpecFromJson(doc); }).code(), ErrorCode::kValidation);

  doc = OneStage(LogStage("a", "x", "y"));
  doc["stages"][0]["op"] = "tokenize";
  Error e = CaptureError([&] { SpecFromJson(doc); });
  EXPECT_EQ(e.code(), ErrorCode::kValidation);
  EXPECT_EQ(e.context().stage, "a");

  doc = OneStage(LogStage("a", "x", "x"));
  EXPECT_EQ(CaptureError([&] { SpecFromJson(doc); }).code(), ErrorCode::kValidation);

  doc = OneStage(LogStage("a", "x", "y"));
  doc["stages"][0]["params"]["alpha"] = "big";
  e = CaptureError([&] { SpecFromJson(doc); });
  EXPECT_EQ(e.code(), ErrorCode::kValidation);
  EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);

  doc = OneStage(LogStage("a", "nowhere", "y"));
  EXPECT_EQ(CaptureError([&] { SpecFromJson(doc); }).code(), ErrorCode::kValidation);
}

std::vector<std::string> OrderNames(const Json& doc) {
  const PipelineSpec spec = SpecFromJson(doc);
  std::vector<std::string> names;
  for (size_t i : TopoOrder(spec)) names.push_back(spec.stages[i].name);
  return names;
}

TEST(DagTest, OrdersProducersFirst) {
  Json doc = OneStage(LogStage("C", "b", "c"));
  doc["stages"].push_back(LogStage("B", "a", "b"));
  doc["stages"].push_back(LogStage("A", "x", "a"));
  EXPECT_EQ(OrderNames(doc), (std::vector<std::string>{"A", "B", "C"}));
}

TEST(DagTest, IndependentStagesKeepDeclarationOrder) {
  Json doc = OneStage(LogStage("X", "x", "p"));
  doc["stages"].push_back(LogStage("Y", "x", "q"));
  EXPECT_EQ(OrderNames(doc), (std::vector<std::string>{"X", "Y"}));
  Json swapped = OneStage(LogStage("Y", "x", "q"));
  swapped["stages"].push_back(LogStage("X", "x", "p"));
  EXPECT_EQ(OrderNames(swapped), (std::vector<std::string>{"Y", "X"}));
}

TEST(DagTest, CycleIsReported) {
  Json doc = OneStage(LogStage("A", "b", "a"));
  doc["stages"].push_back(LogStage("B", "a", "b"));
  const Error e = CaptureError([&] { SpecFromJson(doc); });
  EXPECT_EQ(e.code(), ErrorCode::kCycle);
  const std::string what = e.what();
  EXPECT_TRUE(what.find("A") != std::string::npos || what.find("B") != std::string::npos);
}

TEST(MovieLensTest, FitLearnsVocabulariesWithoutMask) {
  const PipelineSpec spec = MovieLensSpec();
  const RecordBatch data = MovieLensRows(spec);
  ASSERT_EQ(data.num_rows(), 6u);
  const FittedPipeline fitted = Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data});
  const FittedStage& genres = fitted.stages()[4];
  ASSERT_TRUE(genres.state);
  // Oracle: per-leaf counts of the split genres, ties by code point.
  EXPECT_EQ((*genres.state)["labels"],
            Json({"Drama", "Action", "Comedy", "Adventure", "Animation", "Children's",
                  "Musical", "Romance"}));
  EXPECT_EQ((*fitted.stages()[1].state)["labels"], Json({"1193", "1197", "2355", "3408", "661"}));
}

TEST(MovieLensTest, TransformMatchesListing1Behaviour) {
  const PipelineSpec spec = MovieLensSpec();
  const FittedPipeline fitted =
      Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{MovieLensRows(spec)});
  const RecordBatch probe = RecordBatch::FromRows(
      spec.inputs, {{I(42), I(7), I(3), S("Action|Comedy")}, {I(5), I(1193), I(10), S("Drama")}});
  const RecordBatch out = fitted.Transform(probe);
  const auto& genres = out.Find("Genres_indexed")->values;
  // Layout: mask 0, OOV 1, labels from 2 in fitted order.
  EXPECT_EQ(genres[0], L({I(3), I(4), I(0), I(0), I(0), I(0)}));
  EXPECT_EQ(genres[1], L({I(2), I(0), I(0), I(0), I(0), I(0)}));
  EXPECT_EQ(out.Find("MovieID_indexed")->values[0], I(0));
  EXPECT_EQ(out.Find("MovieID_indexed")->values[1], I(1));
  EXPECT_EQ(out.Find("Occupation_indexed")->values[0], L({F(0), F(0), F(0), F(0), F(0)}));
  EXPECT_EQ(out.Find("Occupation_indexed")->values[1], L({F(1), F(0), F(0), F(0), F(0)}));
  EXPECT_EQ(out.Find("UserID_indexed")->values[0], I(3645));
  EXPECT_EQ(out.Find("UserID_indexed")->values[0],
            I(1 + FloorMod(Murmur3_32Signed("42", 42), 10000)));
  EXPECT_EQ(out.schema().Find("Genres_indexed")->shape, ShapeSpec::List(6));
  EXPECT_EQ(out.schema().Find("Occupation_indexed")->shape, ShapeSpec::List(5));
}

TEST(MovieLensTest, ExportHasFiveOpsAndRoundTrips) {
  const PipelineSpec spec = MovieLensSpec();
  const FittedPipeline fitted =
      Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{MovieLensRows(spec)});
  const BundleManifest m = ExportBundle(fitted);
  ASSERT_EQ(m.ops.size(), 5u);
  EXPECT_EQ(m.ops[4].state->at("labels").size(), 8u);
  const std::string doc = ExportBundleDocument(fitted);
  EXPECT_EQ(ExportBundleDocument(fitted), doc);
  EXPECT_EQ(ExecutablePlan::Load(doc).ToDocument(), doc);
}

TEST(MovieLensTest, RuntimeAgreesWithBatchEngine) {
  const PipelineSpec spec = MovieLensSpec();
  const RecordBatch data = MovieLensRows(spec);
  const FittedPipeline fitted = Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data});
  const ExecutablePlan plan = ExecutablePlan::Load(ExportBundleDocument(fitted));
  const RecordBatch probe = RecordBatch::FromRows(
      spec.inputs, {{I(42), I(7), I(3), S("Action|Comedy")}, {N(), I(661), N(), N()}});
  for (const RecordBatch* b : {&data, &probe}) {
    const RecordBatch out = fitted.Transform(*b);
    ASSERT_EQ(Schema(plan.output_fields()), out.schema());
    for (size_t r = 0; r < b->num_rows(); ++r) {
      EXPECT_EQ(plan.Execute(b->Row(r)), out.Row(r));
    }
  }
}

TEST(FitTest, PartitionCountAndThreadsDoNotChangeTheBundle) {
  const PipelineSpec spec = MovieLensSpec();
  const RecordBatch data = MovieLensRows(spec);
  const Pipeline p = Pipeline::Compile(spec);
  const std::string one = ExportBundleDocument(p.Fit(std::vector<RecordBatch>{data}));
  for (size_t k : {2, 3, 4, 6}) {
    for (size_t threads : {1, 4}) {
      EXPECT_EQ(ExportBundleDocument(p.Fit(Partition(data, k), {.threads = threads})), one)
          << k << " partitions, " << threads << " threads";
    }
  }
  // Shuffled partitions: rows in reverse order.
  std::vector<std::vector<Value>> rows;
  for (size_t r = data.num_rows(); r-- > 0;) rows.push_back(data.Row(r));
  const RecordBatch reversed = RecordBatch::FromRows(spec.inputs, rows);
  EXPECT_EQ(ExportBundleDocument(p.Fit(Partition(reversed, 3))), one);
}

TEST(FitTest, NoEstimatorsMeansDirectApplication) {
  const PipelineSpec spec = SpecFromJson(OneStage(
      {{"name", "l"}, {"op", "log_transform"}, {"inputs", {"x"}}, {"outputs", {"y"}},
       {"params", {{"alpha", 0.0}}}}));
  const RecordBatch data = RecordBatch::FromRows(spec.inputs, {{F(1.0)}, {N()}});
  const FittedPipeline fitted = Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data});
  const RecordBatch out = fitted.Transform(data);
  EXPECT_EQ(out.Find("y")->values, (std::vector<Value>{F(0.0), N()}));
  EXPECT_FALSE(fitted.stages()[0].state);
}

TEST(FitTest, EmptyBatchKeepsFullSchema) {
  const PipelineSpec spec = MovieLensSpec();
  const FittedPipeline fitted =
      Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{MovieLensRows(spec)});
  const RecordBatch out = fitted.Transform(RecordBatch(spec.inputs));
  EXPECT_EQ(out.num_rows(), 0u);
  EXPECT_EQ(out.num_columns(), 9u);
  EXPECT_EQ(out.schema(), fitted.output_schema());
}

TEST(FitTest, TransformIsIdempotent) {
  const PipelineSpec spec = MovieLensSpec();
  const RecordBatch data = MovieLensRows(spec);
  const FittedPipeline fitted = Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data});
  EXPECT_EQ(Serialize(fitted.Transform(data)), Serialize(fitted.Transform(data)));
}

TEST(FitTest, StageDeclarationOrderDoesNotMatter) {
  PipelineSpec spec = MovieLensSpec();
  const RecordBatch data = MovieLensRows(spec);
  const RecordBatch base =
      Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data}).Transform(data);
  std::reverse(spec.stages.begin(), spec.stages.end());
  const RecordBatch permuted =
      Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data}).Transform(data);
  for (const FieldSpec& f : base.schema().fields()) {
    ASSERT_NE(permuted.Find(f.name), nullptr) << f.name;
    EXPECT_EQ(permuted.Find(f.name)->values, base.Find(f.name)->values) << f.name;
  }
}

TEST(FitTest, EstimatorsSeeUpstreamTransformedData) {
  // The scaler fits on log(x + 1), not x.
  Json doc = OneStage(LogStage("log", "x", "lx"));
  doc["stages"].push_back({{"name", "z"}, {"op", "standard_scale"}, {"inputs", {"lx"}},
                           {"outputs", {"lz"}}, {"params", Json::object()}});
  const PipelineSpec spec = SpecFromJson(doc);
  const RecordBatch data = RecordBatch::FromRows(spec.inputs, {{F(0.0)}, {F(std::exp(2.0) - 1)}});
  const FittedPipeline fitted = Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data});
  EXPECT_NEAR((*fitted.stages()[1].state)["mean"][0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR((*fitted.stages()[1].state)["std"][0].get<double>(), 1.0, 1e-12);
}

TEST(FitTest, ErrorsCarryStagePartitionAndRow) {
  const PipelineSpec spec = SpecFromJson(OneStage(LogStage("log", "x", "y")));
  const RecordBatch data =
      RecordBatch::FromRows(spec.inputs, {{F(1)}, {F(2)}, {F(3)}, {F(-5)}, {F(4)}});
  const Pipeline p = Pipeline::Compile(spec);
  const Error e = CaptureError([&] { p.Fit(Partition(data, 2)); });
  EXPECT_EQ(e.code(), ErrorCode::kDomain);
  EXPECT_EQ(e.context().stage, "log");
  EXPECT_EQ(e.context().partition, 1);
  EXPECT_EQ(e.context().row, 0);

  std::vector<DroppedRow> dropped;
  const FittedPipeline fitted =
      p.Fit(Partition(data, 2), {.drop_failed_rows = true}, &dropped);
  ASSERT_EQ(dropped.size(), 1u);
  EXPECT_EQ(dropped[0].partition, 1u);
  EXPECT_EQ(dropped[0].row, 0u);
  const TolerantBatch t = fitted.TransformTolerant(data);
  EXPECT_TRUE(t.row_errors[3].has_value());
  EXPECT_EQ(t.batch.Find("y")->values[3], N());
  EXPECT_FALSE(t.row_errors[0].has_value());
}

TEST(FitTest, EstimatorFitErrorsPropagate) {
  Json doc = OneStage({{"name", "imp"}, {"op", "impute"}, {"inputs", {"x"}},
                       {"outputs", {"y"}}, {"params", Json::object()}});
  const PipelineSpec spec = SpecFromJson(doc);
  const RecordBatch data = RecordBatch::FromRows(spec.inputs, {{N()}, {N()}});
  const Error e = CaptureError([&] { Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data}); });
  EXPECT_EQ(e.code(), ErrorCode::kAllMissing);
  EXPECT_EQ(e.context().stage, "imp");
}

TEST(FitTest, TransformPartitionsMatchesWholeBatch) {
  const PipelineSpec spec = MovieLensSpec();
  const RecordBatch data = MovieLensRows(spec);
  const FittedPipeline fitted = Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data});
  const std::vector<RecordBatch> parts = fitted.TransformPartitions(Partition(data, 4), 2);
  EXPECT_EQ(Serialize(Concatenate(parts)), Serialize(fitted.Transform(data)));
}

TEST(ExportTest, EmptyPipelineHasNoOps) {
  PipelineSpec spec;
  spec.inputs.Add(Field("x", DType::kFloat64));
  const FittedPipeline fitted = Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{});
  const BundleManifest m = ExportBundle(fitted);
  EXPECT_TRUE(m.ops.empty());
  EXPECT_EQ(m.inputs.size(), 1u);
  EXPECT_EQ(ExportUnfitted(Pipeline::Compile(spec)).ops.size(), 0u);
}

TEST(ExportTest, UnfittedExportCarriesNoState) {
  const BundleManifest m = ExportUnfitted(Pipeline::Compile(MovieLensSpec()));
  ASSERT_EQ(m.ops.size(), 5u);
  for (const OpRecord& op : m.ops) EXPECT_FALSE(op.state);
  EXPECT_EQ(m.ops[0].params["numBins"], 10000);
}

TEST(RuntimeTest, ConcurrentExecutionMatchesSequential) {
  const PipelineSpec spec = MovieLensSpec();
  const RecordBatch data = MovieLensRows(spec);
  const ExecutablePlan plan = ExecutablePlan::Load(
      ExportBundleDocument(Pipeline::Compile(spec).Fit(std::vector<RecordBatch>{data})));
  std::vector<std::vector<Value>> expected;
  for (size_t r = 0; r < data.num_rows(); ++r) expected.push_back(plan.Execute(data.Row(r)));
  std::vector<int> mismatches(8, 0);
  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      for (int it = 0; it < 200; ++it) {
        const size_t r = (w + it) % data.num_rows();
        if (plan.Execute(data.Row(r)) != expected[r]) ++mismatches[w];
      }
    });
  }
  for (std::thread& t : workers) t.join();
  for (int m : mismatches) EXPECT_EQ(m, 0);
}

}  // namespace
}  // namespace featherpipe

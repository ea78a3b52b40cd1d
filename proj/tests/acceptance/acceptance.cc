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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <httplib.h>

#include "featherpipe/core/error.h"
#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/murmur3.h"
#include "featherpipe/core/record_batch.h"
#include "featherpipe/io/data_io.h"
#include "featherpipe/parity/corpus.h"
#include "featherpipe/parity/oracles.h"
#include "featherpipe/parity/parity.h"
#include "featherpipe/parity/random_pipeline.h"
#include "featherpipe/pipeline/export.h"
#include "featherpipe/pipeline/pipeline.h"
#include "featherpipe/pipeline/spec.h"
#include "featherpipe/runtime/plan.h"
#include "featherpipe/service/commands.h"
#include "featherpipe/service/http.h"
#include "featherpipe/transforms/catalog.h"

namespace featherpipe {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const std::string kData = FEATHERPIPE_TEST_DATA;

struct Outcome {
  bool pass;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

fs::path ScratchDir() {
  const fs::path dir =
      fs::temp_directory_path() / fmt::format("featherpipe_acceptance_{}", getpid());
  fs::create_directories(dir);
  return dir;
}

PipelineSpec MovieLensSpec() {
  return ParseSpec(ReadTextFile(kData + "/movielens/spec.json"));
}

std::string JsonLines(const RecordBatch& batch) {
  std::ostringstream out;
  WriteJsonLines(out, batch);
  return out.str();
}

std::vector<Json> ParseLines(const std::string& text) {
  std::vector<Json> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) rows.push_back(Json::parse(line));
  }
  return rows;
}

StageConfig Stage(std::string name, OpKind op, std::vector<std::string> inputs,
                  std::vector<std::string> outputs, Json params = Json::object()) {
  return {std::move(name), op, std::move(inputs), std::move(outputs), std::move(params)};
}

// ---------------------------------------------------------------------------
// 1. Every op x 20 random parameterizations x 1000 rows.

Outcome ParitySweep() {
  size_t transformers = 0;
  size_t estimator_ops = 0;
  for (const SweepOp& op : SweepOps()) ++(IsEstimator(op.kind) ? estimator_ops : transformers);
  const auto start = Clock::now();
  const SweepResult result = RunParitySweep({.params_per_op = 20, .rows = 1000});
  const double elapsed = Seconds(start);
  size_t mismatches = 0;
  size_t failed = 0;
  std::string first;
  for (const SweepCase& c : result.cases) {
    mismatches += c.report.mismatch_count;
    if (!c.report.passed()) {
      ++failed;
      if (first.empty()) first = fmt::format(" first failure {}#{}", c.op, c.index);
    }
  }
  const bool pass = transformers >= 18 && estimator_ops >= 6 &&
                    result.cases.size() == SweepOps().size() * 20 && result.passed() &&
                    elapsed < 120.0;
  return {pass, fmt::format("{} transformer + {} estimator ops, {} cases x 1000 rows, "
                            "{} failed cases, {} mismatched cells, {} redrawn, {:.1f} s{}",
                            transformers, estimator_ops, result.cases.size(), failed,
                            mismatches, result.redrawn, elapsed, first)};
}

// ---------------------------------------------------------------------------
// 2. Partition-count invariance of fitted state and bundle bytes.

Outcome PartitionInvariance() {
  CorpusSpec corpus;
  corpus.num_rows = 10000;
  corpus.seed = 101;
  const RecordBatch data = GenerateCorpusBatch(corpus);
  PipelineSpec spec;
  spec.inputs = CorpusSchema(corpus);
  spec.stages = {
      Stage("idx", OpKind::kStringIndex, {"cat"}, {"cat_i"},
            {{"maskToken", kPadToken}, {"numOOVIndices", 2}}),
      Stage("tag_idx", OpKind::kStringIndex, {"tags"}, {"tags_i"},
            {{"stringOrderType", "frequencyAsc"}}),
      Stage("shared", OpKind::kSharedStringIndex, {"cat", "cat2"}, {"cat_s", "cat2_s"}),
      Stage("onehot", OpKind::kOneHot, {"cat2"}, {"cat2_v"}, {{"dropUnseen", true}}),
      Stage("scale", OpKind::kStandardScale, {"scores"}, {"scores_z"}),
      Stage("scale_x", OpKind::kStandardScale, {"x"}, {"x_z"}),
      Stage("fill_median", OpKind::kImpute, {"amount"}, {"amount_f"},
            {{"strategy", "median"}, {"sentinel", kSentinel}}),
      Stage("fill_mean", OpKind::kImpute, {"y"}, {"y_f"}, {{"strategy", "mean"}}),
  };
  const Pipeline pipeline = Pipeline::Compile(spec);
  std::optional<std::vector<std::string>> base_states;
  std::string base_bundle;
  std::vector<std::string> diffs;
  for (size_t k : {1, 2, 4, 8}) {
    const std::vector<RecordBatch> parts = Partition(data, k);
    const FittedPipeline fitted = pipeline.Fit(parts, {.threads = k});
    std::vector<std::string> states;
    for (const FittedStage& s : fitted.stages()) {
      if (s.state) states.push_back(WriteCanonicalJson(*s.state));
    }
    const std::string bundle = ExportBundleDocument(fitted);
    if (!base_states) {
      base_states = states;
      base_bundle = bundle;
      continue;
    }
    if (states != *base_states) diffs.push_back(fmt::format("K={} state", k));
    if (bundle != base_bundle) diffs.push_back(fmt::format("K={} bundle", k));
  }
  std::string detail = fmt::format("10000 rows, {} estimator stages, K in {{1,2,4,8}}",
                                   base_states->size());
  if (!diffs.empty()) {
    detail += "; differs:";
    for (const std::string& d : diffs) detail += " " + d;
  } else {
    detail += fmt::format("; identical states, {} byte bundle", base_bundle.size());
  }
  return {diffs.empty(), detail};
}

// ---------------------------------------------------------------------------
// 3. MovieLens behaviors, checked on both backends.

Outcome MovieLensBehaviors() {
  const PipelineSpec spec = MovieLensSpec();
  const RecordBatch sample = ReadDataFile(kData + "/movielens/sample.jsonl", spec.inputs, {});
  const FittedPipeline fitted = Pipeline::Compile(spec).Fit(std::span(&sample, 1));
  const ExecutablePlan plan = ExecutablePlan::Load(ExportBundleDocument(fitted));

  const std::vector<Json> probes = {
      {{"UserID", 1}, {"MovieID", 1193}, {"Occupation", 10}, {"Genres", "Drama"}},
      {{"UserID", 1}, {"MovieID", 999999}, {"Occupation", 10}, {"Genres", "Drama"}},
      {{"UserID", 1}, {"MovieID", 1193}, {"Occupation", 99}, {"Genres", "Drama"}},
      {{"UserID", 1}, {"MovieID", 1193}, {"Occupation", 10}, {"Genres", "Action|Comedy"}},
  };
  std::vector<std::vector<Value>> rows;
  for (const Json& p : probes) {
    std::vector<Value> row;
    for (const FieldSpec& f : spec.inputs.fields()) row.push_back(JsonToValue(p[f.name], f));
    rows.push_back(std::move(row));
  }
  const RecordBatch batch = fitted.Transform(RecordBatch::FromRows(spec.inputs, rows));

  std::vector<std::string> failures;
  for (int engine = 0; engine < 2; ++engine) {
    const char* name = engine == 0 ? "batch" : "runtime";
    std::vector<Json> out;
    for (size_t i = 0; i < probes.size(); ++i) {
      if (engine == 0) {
        Json row = Json::object();
        const std::vector<Value> values = batch.Row(i);
        for (size_t c = 0; c < values.size(); ++c) {
          row[batch.schema().fields()[c].name] = ValueToJson(values[c]);
        }
        out.push_back(row);
      } else {
        out.push_back(plan.OutputToJson(plan.ExecuteJson(probes[i])));
      }
    }
    // Padding positions index to the mask slot.
    const Json& split = out[0]["Genres_split"];
    size_t pads = 0;
    for (size_t j = 0; j < split.size(); ++j) {
      if (split[j] != kPadToken) continue;
      ++pads;
      if (out[0]["Genres_indexed"][j] != 0) failures.push_back(fmt::format("{}: PADDED", name));
    }
    if (pads == 0) failures.push_back(fmt::format("{}: no padding", name));
    if (out[1]["MovieID_indexed"] != 0) failures.push_back(fmt::format("{}: unseen movie", name));
    const Json& occ = out[2]["Occupation_indexed"];
    const bool zeros =
        occ.is_array() && !occ.empty() &&
        std::all_of(occ.begin(), occ.end(), [](const Json& v) { return v == 0.0; });
    if (!zeros) failures.push_back(fmt::format("{}: unseen occupation", name));
    if (out[3]["Genres_indexed"] != Json({3, 4, 0, 0, 0, 0})) {
      failures.push_back(fmt::format("{}: Action|Comedy -> {}", name,
                                     out[3]["Genres_indexed"].dump()));
    }
  }
  std::string detail = "PADDED->0, unseen MovieID->0, unseen Occupation->zeros, "
                       "Action|Comedy->[3,4,0,0,0,0] on both backends";
  if (!failures.empty()) {
    detail = "failed:";
    for (const std::string& f : failures) detail += " [" + f + "]";
  }
  return {failures.empty(), detail};
}

// ---------------------------------------------------------------------------
// 4. Random estimator cases against the brute-force oracles.

class OracleCases {
 public:
  explicit OracleCases(uint64_t seed) : rng_(seed) {}

  // Returns the failing case count per estimator.
  std::map<std::string, size_t> Run(size_t cases) {
    std::map<std::string, size_t> failures;
    for (size_t c = 0; c < cases; ++c) {
      failures["string_index"] += StringIndexCase() ? 0 : 1;
      failures["shared_string_index"] += SharedCase() ? 0 : 1;
      failures["one_hot"] += OneHotCase() ? 0 : 1;
      failures["standard_scale"] += ScaleCase() ? 0 : 1;
      failures["impute"] += ImputeCase() ? 0 : 1;
    }
    return failures;
  }

 private:
  Value Word(int alphabet) {
    const int64_t r = rng_.Uniform(0, alphabet + 1);
    if (r == alphabet) return Value::Null();
    if (r == alphabet + 1) return Value::String("PAD");
    return Value::String("w" + std::to_string(r * 7 % 23));
  }

  std::vector<Value> Strings(size_t n, int alphabet, bool lists) {
    std::vector<Value> cells;
    for (size_t i = 0; i < n; ++i) {
      if (!lists) {
        cells.push_back(Word(alphabet));
      } else if (rng_.Bernoulli(0.1)) {
        cells.push_back(Value::Null());
      } else {
        cells.push_back(Value::MakeList({Word(alphabet), Word(alphabet), Word(alphabet)}));
      }
    }
    return cells;
  }

  Value Float(double scale) {
    const int64_t r = rng_.Uniform(0, 11);
    if (r == 0) return Value::Null();
    if (r == 1) return Value::Float(kSentinel);
    return Value::Float(std::round(rng_.UniformReal(-scale, scale) * 8) / 8);
  }

  // Fits a single-stage pipeline over `columns` split into 1-4 partitions.
  // Returns the fitted stage, or the fit error.
  struct Fitted {
    std::optional<FittedStage> stage;
    std::optional<Error> error;
  };
  Fitted FitOne(OpKind op, const Json& params, const std::vector<FieldSpec>& fields,
                const std::vector<std::vector<Value>>& columns,
                std::vector<std::string> outputs) {
    PipelineSpec spec;
    for (const FieldSpec& f : fields) spec.inputs.Add(f);
    std::vector<std::string> inputs;
    for (const FieldSpec& f : fields) inputs.push_back(f.name);
    spec.stages = {Stage("est", op, inputs, std::move(outputs), params)};
    std::vector<std::vector<Value>> rows(columns[0].size());
    for (size_t r = 0; r < rows.size(); ++r) {
      for (const auto& column : columns) rows[r].push_back(column[r]);
    }
    const RecordBatch batch = RecordBatch::FromRows(spec.inputs, rows);
    const std::vector<RecordBatch> parts =
        Partition(batch, static_cast<size_t>(rng_.Uniform(1, 4)));
    try {
      const FittedPipeline fitted = Pipeline::Compile(spec).Fit(parts, {.threads = 1});
      return {fitted.stages()[0], std::nullopt};
    } catch (const Error& e) {
      return {std::nullopt, e};
    }
  }

  static bool FailedWith(const Fitted& f, ErrorCode code) {
    return !f.stage && f.error && f.error->code() == code;
  }

  static std::vector<std::string> Labels(const FittedStage& s) {
    return (*s.state)["labels"].get<std::vector<std::string>>();
  }

  bool StringIndexCase() {
    static const char* kOrders[] = {"frequencyDesc", "frequencyAsc", "alphabeticalAsc",
                                    "alphabeticalDesc"};
    const bool lists = rng_.Bernoulli(0.5);
    const bool masked = rng_.Bernoulli(0.5);
    const std::string order = kOrders[rng_.Uniform(0, 3)];
    const size_t n = static_cast<size_t>(rng_.Uniform(1, 200));
    const std::vector<Value> cells =
        Strings(n, static_cast<int>(rng_.Uniform(1, 12)), lists);
    const std::optional<std::string> mask =
        masked ? std::optional<std::string>("PAD") : std::nullopt;
    Json params = {{"stringOrderType", order}};
    if (mask) params["maskToken"] = *mask;
    const FieldSpec f{"s", DType::kString, lists ? ShapeSpec::List(3) : ShapeSpec::Scalar()};
    const Fitted fit = FitOne(OpKind::kStringIndex, params, {f}, {cells}, {"o"});
    const std::vector<std::string> oracle = OracleVocabulary(cells, order, mask);
    if (oracle.empty()) return FailedWith(fit, ErrorCode::kEmptyVocabulary);
    return fit.stage && Labels(*fit.stage) == oracle;
  }

  bool SharedCase() {
    const size_t n = static_cast<size_t>(rng_.Uniform(1, 100));
    const std::vector<Value> a = Strings(n, 5, false);
    const std::vector<Value> b = Strings(n, 9, false);
    std::vector<Value> both(a);
    both.insert(both.end(), b.begin(), b.end());
    const std::vector<std::string> oracle =
        OracleVocabulary(both, "frequencyDesc", std::nullopt);
    const Fitted fit = FitOne(OpKind::kSharedStringIndex, Json::object(),
                              {{"a", DType::kString, ShapeSpec::Scalar()},
                               {"b", DType::kString, ShapeSpec::Scalar()}},
                              {a, b}, {"ai", "bi"});
    if (oracle.empty()) return FailedWith(fit, ErrorCode::kEmptyVocabulary);
    return fit.stage && Labels(*fit.stage) == oracle;
  }

  bool OneHotCase() {
    const std::vector<Value> cells =
        Strings(static_cast<size_t>(rng_.Uniform(1, 100)), static_cast<int>(rng_.Uniform(2, 8)),
                false);
    const bool drop = rng_.Bernoulli(0.5);
    const Fitted fit = FitOne(OpKind::kOneHot, {{"dropUnseen", drop}, {"maskToken", "PAD"}},
                              {{"s", DType::kString, ShapeSpec::Scalar()}}, {cells}, {"v"});
    const std::vector<std::string> oracle = OracleVocabulary(cells, "frequencyDesc", "PAD");
    if (oracle.empty()) return FailedWith(fit, ErrorCode::kEmptyVocabulary);
    if (!fit.stage || Labels(*fit.stage) != oracle) return false;
    // Slot = label position, shifted by one when the OOV slot is kept.
    const size_t width = oracle.size() + (drop ? 0 : 1);
    for (const std::string& probe : {oracle.front(), oracle.back(), std::string("unseen")}) {
      std::vector<Value> expected(width, Value::Float(0.0));
      const auto it = std::find(oracle.begin(), oracle.end(), probe);
      if (it != oracle.end()) {
        expected[static_cast<size_t>(it - oracle.begin()) + (drop ? 0 : 1)] = Value::Float(1.0);
      } else if (!drop) {
        expected[0] = Value::Float(1.0);
      }
      const Value in = Value::String(probe);
      if (fit.stage->apply(std::span(&in, 1))[0] != Value::MakeList(expected)) return false;
    }
    return true;
  }

  bool ScaleCase() {
    const size_t width = static_cast<size_t>(rng_.Uniform(1, 4));
    const double scale = std::pow(10.0, static_cast<double>(rng_.Uniform(-4, 7)));
    std::vector<Value> cells;
    for (int64_t i = 0, n = rng_.Uniform(1, 150); i < n; ++i) {
      std::vector<Value> leaves;
      for (size_t j = 0; j < width; ++j) leaves.push_back(Float(scale));
      cells.push_back(rng_.Bernoulli(0.07) ? Value::Null() : Value::MakeList(leaves));
    }
    const Fitted fit =
        FitOne(OpKind::kStandardScale, Json::object(),
               {{"v", DType::kFloat64, ShapeSpec::List(static_cast<int64_t>(width))}}, {cells},
               {"z"});
    const OracleMomentsResult oracle = OracleMoments(cells, width);
    if (oracle.rows == 0) return FailedWith(fit, ErrorCode::kAllMissing);
    if (!fit.stage) return false;
    const Json& state = *fit.stage->state;
    for (size_t j = 0; j < width; ++j) {
      if (!FloatsAgree(state["mean"][j].get<double>(), oracle.mean[j]) ||
          !FloatsAgree(state["std"][j].get<double>(), oracle.stddev[j])) {
        return false;
      }
    }
    return true;
  }

  bool ImputeCase() {
    const bool median = rng_.Bernoulli(0.5);
    const std::optional<double> sentinel =
        rng_.Bernoulli(0.5) ? std::optional<double>(kSentinel) : std::nullopt;
    std::vector<Value> cells;
    for (int64_t i = 0, n = rng_.Uniform(1, 120); i < n; ++i) cells.push_back(Float(1000.0));
    Json params = {{"strategy", median ? "median" : "mean"}};
    if (sentinel) params["sentinel"] = *sentinel;
    const Fitted fit =
        FitOne(OpKind::kImpute, params, {{"x", DType::kFloat64, ShapeSpec::Scalar()}}, {cells},
               {"f"});
    const std::vector<double> observed = OracleObserved(cells, sentinel);
    if (observed.empty()) return FailedWith(fit, ErrorCode::kAllMissing);
    if (!fit.stage) return false;
    const double got = (*fit.stage->state)["imputeValue"].get<double>();
    return median ? got == OracleMedian(observed) : FloatsAgree(got, OracleMean(observed));
  }

  Rng rng_;
};

Outcome EstimatorOracles() {
  OracleCases cases(2027);
  const std::map<std::string, size_t> failures = cases.Run(200);
  size_t total = 0;
  std::string detail = "200 cases each:";
  for (const auto& [name, n] : failures) {
    total += n;
    detail += fmt::format(" {} {}/200", name, 200 - n);
  }
  return {total == 0, detail};
}

// ---------------------------------------------------------------------------
// 5. The 60-stage ranking pipeline on 10k rows.

Outcome LongPipeline() {
  const PipelineSpec spec = LtrSpec();
  const auto start = Clock::now();
  std::vector<RecordBatch> parts = Partition(GenerateLtrBatch(10000, 60), 4);
  const ParityReport report = CheckParity(spec, parts);
  const double elapsed = Seconds(start);
  const bool pass = spec.stages.size() == 60 && report.passed() && elapsed < 60.0;
  std::string detail =
      fmt::format("{} stages, {} rows, {} cells, {} mismatches, {} error rows, {:.1f} s",
                  spec.stages.size(), report.rows, report.total_cells, report.mismatch_count,
                  report.error_rows, elapsed);
  if (report.fit_error) detail += std::string("; fit error: ") + report.fit_error->what();
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 6. The runtime built on its own agrees with the in-process runtime.

std::string CommandOutput(const std::string& command) {
  std::string text;
  if (FILE* pipe = popen(command.c_str(), "r")) {
    char buffer[4096];
    size_t n;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) text.append(buffer, n);
    pclose(pipe);
  }
  return text;
}

Outcome IsolatedRuntime(const std::string& runner) {
  if (runner.empty() || !fs::exists(runner)) {
    return {false, "isolated runtime runner not found (" + runner +
                       "); build tests/runtime_isolation first"};
  }
  // Symbols that would only be present if fitting code leaked in.
  const std::string symbols = CommandOutput("nm -C '" + runner + "' 2>/dev/null");
  for (const char* forbidden :
       {"featherpipe::Estimator::", "featherpipe::Pipeline::", "featherpipe::FittedPipeline::",
        "mpfr_", "__gmp"}) {
    if (symbols.find(forbidden) != std::string::npos) {
      return {false, std::string("runner contains ") + forbidden};
    }
  }
  const fs::path dir = ScratchDir() / "isolation";
  fs::create_directories(dir);
  size_t compared = 0;
  struct Case {
    std::string name;
    PipelineSpec spec;
    std::vector<RecordBatch> fit;
    RecordBatch rows;
  };
  std::vector<Case> cases;
  {
    const PipelineSpec ml = MovieLensSpec();
    std::vector<RecordBatch> all = SpecCorpus(ml, 3000, 61, 1);
    cases.push_back({"movielens", ml, {all[0].Slice(0, 2000)}, all[0].Slice(2000, 3000)});
    const RecordBatch ltr = GenerateLtrBatch(3000, 62);
    cases.push_back({"ranking", LtrSpec(), {ltr.Slice(0, 2000)}, ltr.Slice(2000, 3000)});
  }
  for (const Case& c : cases) {
    const std::string bundle = ExportBundleDocument(Pipeline::Compile(c.spec).Fit(c.fit));
    const std::string bundle_path = (dir / (c.name + ".bundle.json")).string();
    const std::string rows_path = (dir / (c.name + ".rows.jsonl")).string();
    const std::string out_path = (dir / (c.name + ".out.jsonl")).string();
    WriteTextFile(bundle_path, bundle);
    const std::string rows_text = JsonLines(c.rows);
    WriteTextFile(rows_path, rows_text);
    const int status = std::system(
        fmt::format("'{}' '{}' '{}' '{}'", runner, bundle_path, rows_path, out_path).c_str());
    if (status != 0) return {false, c.name + ": runner exited with " + std::to_string(status)};

    const ExecutablePlan plan = ExecutablePlan::Load(bundle);
    std::ostringstream expected;
    for (const Json& row : ParseLines(rows_text)) {
      try {
        expected << WriteCanonicalJson(plan.OutputToJson(plan.ExecuteJson(row))) << "\n";
      } catch (const Error& e) {
        expected << WriteCanonicalJson(Json{{"error", ErrorCodeName(e.code())}}) << "\n";
      }
      ++compared;
    }
    if (ReadTextFile(out_path) != expected.str()) {
      return {false, c.name + ": isolated runtime output differs from in-process runtime"};
    }
  }
  fs::remove_all(dir);
  return {true, fmt::format("runner built from core+transforms+runtime only; {} rows over "
                            "2 bundles byte-identical to the in-process runtime",
                            compared)};
}

// ---------------------------------------------------------------------------
// 7. HTTP replies equal the apply command; single-row throughput.

Outcome ServiceAgreement() {
  const fs::path dir = ScratchDir() / "service";
  fs::create_directories(dir);
  const PipelineSpec spec = MovieLensSpec();
  std::vector<RecordBatch> all = SpecCorpus(spec, 3000, 71, 1);
  const std::string bundle =
      ExportBundleDocument(Pipeline::Compile(spec).Fit(std::vector{all[0].Slice(0, 2000)}));
  const std::string bundle_path = (dir / "bundle.json").string();
  const std::string rows_path = (dir / "rows.jsonl").string();
  WriteTextFile(bundle_path, bundle);
  const std::string rows_text = JsonLines(all[0].Slice(2000, 3000));
  WriteTextFile(rows_path, rows_text);
  const std::vector<Json> rows = ParseLines(rows_text);

  std::ostringstream applied;
  std::ostringstream err;
  const int code = CmdApply({.bundle_path = bundle_path, .data = {.path = rows_path}}, applied,
                            err);
  if (code != kExitOk) return {false, "apply failed: " + err.str()};
  const std::vector<Json> expected = ParseLines(applied.str());

  InferenceServer server(ExecutablePlan::Load(bundle));
  const int port = server.Bind("127.0.0.1", 0);
  if (port <= 0) return {false, "cannot bind a local port"};
  std::thread runner([&] { server.Run(); });
  server.WaitUntilReady();
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(60, 0);
  const auto http_start = Clock::now();
  auto res = client.Post("/v1/transform", Json{{"rows", rows}}.dump(), "application/json");
  const double http_seconds = Seconds(http_start);
  server.Stop();
  runner.join();
  if (!res) return {false, "POST failed: " + httplib::to_string(res.error())};
  if (res->status != 200) return {false, fmt::format("POST returned {}", res->status)};
  const Json reply = Json::parse(res->body);
  const Json& got = reply["rows"];
  size_t cells = 0;
  size_t differing = 0;
  if (got.size() != expected.size() || !reply["errors"].empty()) {
    return {false, fmt::format("{} rows and {} errors returned for {} applied rows", got.size(),
                               reply["errors"].size(), expected.size())};
  }
  for (size_t i = 0; i < expected.size(); ++i) {
    if (got[i].size() != expected[i].size()) ++differing;
    for (const auto& [key, value] : expected[i].items()) {
      ++cells;
      if (!got[i].contains(key) || got[i][key] != value) ++differing;
    }
  }

  const ExecutablePlan plan = ExecutablePlan::Load(bundle);
  const size_t iterations = 20000;
  const auto start = Clock::now();
  for (size_t i = 0; i < iterations; ++i) {
    const std::vector<Value> out = plan.ExecuteJson(rows[i % rows.size()]);
    if (out.empty()) return {false, "empty output"};
  }
  const double rate = static_cast<double>(iterations) / Seconds(start);
  fs::remove_all(dir);
  const bool pass = expected.size() == 1000 && differing == 0 && rate >= 5000.0;
  return {pass, fmt::format("{} POSTed rows, {} cells, {} differing vs apply ({:.0f} ms); "
                            "{:.0f} single-row transforms/s in-process",
                            expected.size(), cells, differing, http_seconds * 1000, rate)};
}

// ---------------------------------------------------------------------------
// 8. MurmurHash3 goldens.

Outcome MurmurGoldens() {
  struct Unsigned {
    const char* input;
    uint32_t seed;
    uint32_t expected;
  };
  const Unsigned reference[] = {
      {"", 0, 0u},
      {"", 1, 0x514e28b7u},
      {"Hello, world!", 1234, 0xfaf6cdb3u},
      {"The quick brown fox jumps over the lazy dog", 0x9747b28c, 0x2fa826cdu},
  };
  struct Signed {
    const char* input;
    uint32_t seed;
    int32_t expected;
  };
  const Signed goldens[] = {
      {"42", 42, 1797003644},        {"42", 43, 1387365904},
      {"42", 44, -2074100941},       {"PADDED", 42, -1894736},
      {"hotel_123", 42, 1978701947}, {"hotel_123", 43, 1318834682},
      {"hotel_123", 44, 630700287},  {"a", 42, -1293573533},
      {"", 42, 142593372},           {"Action", 42, 101989460},
      {"Comedy", 42, -801893581},    {"h\xc3\xa9llo", 42, -159043077},
      {"abc", 42, 1313807976},       {"abcd", 42, -396302900},
      {"abcde", 42, -1361433616},
  };
  size_t failed = 0;
  for (const Unsigned& c : reference) failed += Murmur3_32(c.input, c.seed) != c.expected;
  for (const Signed& g : goldens) failed += Murmur3_32Signed(g.input, g.seed) != g.expected;
  // Through the hash_index op in a loaded bundle.
  const ExecutablePlan plan = ExecutablePlan::Load(R"({
    "formatVersion": 1,
    "inputs": [{"name": "id", "dtype": "int64", "shape": []}],
    "ops": [{"name": "h", "op": "hash_index", "inputs": ["id"], "outputs": ["h_i"],
             "params": {"numBins": 10000}}]})");
  const Json out = plan.OutputToJson(plan.ExecuteJson({{"id", 42}}));
  failed += out["h_i"] != 3645;
  const size_t total = std::size(reference) + std::size(goldens) + 1;
  return {failed == 0,
          fmt::format("{}/{} goldens (x86_32 reference vectors, seed-42 signed values, "
                      "hash_index(\"42\", 10000) = {})",
                      total - failed, total, out["h_i"].dump())};
}

}  // namespace
}  // namespace featherpipe

int main(int argc, char** argv) {
  using featherpipe::Outcome;
  CLI::App app{"featherpipe acceptance suite"};
  std::string runner;
  std::vector<int> only;
  app.add_option("--runtime-runner", runner, "Path to the isolated runtime runner");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"parity sweep", featherpipe::ParitySweep},
      {"partition invariance", featherpipe::PartitionInvariance},
      {"movielens behaviors", featherpipe::MovieLensBehaviors},
      {"estimator oracles", featherpipe::EstimatorOracles},
      {"60-stage pipeline", featherpipe::LongPipeline},
      {"isolated runtime", [&] { return featherpipe::IsolatedRuntime(runner); }},
      {"http service", featherpipe::ServiceAgreement},
      {"murmur3 goldens", featherpipe::MurmurGoldens},
  };
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome outcome{false, ""};
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    all = all && outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first
              << ": " << outcome.detail << std::endl;
  }
  std::error_code ignored;
  std::filesystem::remove_all(featherpipe::ScratchDir(), ignored);
  return all ? 0 : 1;
}

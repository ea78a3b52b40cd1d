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
#include "featherpipe/parity/parity.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "featherpipe/core/coerce.h"
#include "featherpipe/parity/random_pipeline.h"
#include "featherpipe/pipeline/export.h"
#include "featherpipe/pipeline/parallel.h"
#include "featherpipe/pipeline/pipeline.h"
#include "featherpipe/runtime/plan.h"

namespace featherpipe {

bool FloatsAgree(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  if (std::isinf(a) || std::isinf(b)) return a == b;
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-9 * scale;
}

bool ValuesAgree(const Value& a, const Value& b, double* delta) {
  if (a.is_null() || b.is_null()) return a.is_null() && b.is_null();
  if (a.is_list() || b.is_list()) {
    if (!a.is_list() || !b.is_list()) return false;
    const auto& x = a.AsList();
    const auto& y = b.AsList();
    if (x.size() != y.size()) return false;
    bool ok = true;
    for (size_t i = 0; i < x.size(); ++i) ok &= ValuesAgree(x[i], y[i], delta);
    return ok;
  }
  if (a.is_float() && b.is_float()) {
    if (FloatsAgree(a.AsFloat(), b.AsFloat())) return true;
    if (delta != nullptr) {
      *delta = std::max(*delta, std::fabs(a.AsFloat() - b.AsFloat()));
    }
    return false;
  }
  return a == b;
}

std::string ParityReport::ToText() const {
  std::string out;
  if (fit_error) out += std::string("fit failed: ") + fit_error->what() + "\n";
  for (const Mismatch& m : mismatches) {
    out += "row " + std::to_string(m.row) + " column " + m.column +
           ": batch=" + m.batch_value + " bundle=" + m.bundle_value;
    if (m.delta) out += " delta=" + RenderDouble(*m.delta);
    out += "\n";
  }
  if (mismatch_count > mismatches.size()) {
    out += "... " + std::to_string(mismatch_count - mismatches.size()) +
           " more mismatches\n";
  }
  return out;
}

Json ParityReport::Summary() const {
  Json j = {{"passed", passed()},
            {"rows", rows},
            {"totalCells", total_cells},
            {"errorRows", error_rows},
            {"mismatches", mismatch_count},
            {"fitError", nullptr},
            {"fault", nullptr}};
  if (fit_error) j["fitError"] = fit_error->what();
  if (fault) j["fault"] = *fault;
  return j;
}

namespace {

std::string Render(const Value& v) { return WriteCanonicalJson(ValueToJson(v)); }

std::string ErrorLabel(const std::optional<Error>& e) {
  return e ? std::string(ErrorCodeName(e->code())) : std::string("ok");
}

// Returns a description of the corruption, or nullopt when the bundle has
// no fitted state to corrupt.
std::optional<std::string> InjectFault(BundleManifest& manifest) {
  for (OpRecord& op : manifest.ops) {
    if (!op.state) continue;
    Json& state = *op.state;
    if (auto it = state.find("labels"); it != state.end() && it->size() >= 2) {
      std::swap((*it)[0], (*it)[1]);
      return "swapped the first two labels of '" + op.name + "'";
    }
    if (auto it = state.find("mean"); it != state.end() && !it->empty()) {
      (*it)[0] = (*it)[0].get<double>() + 1.0;
      return "shifted the first mean of '" + op.name + "'";
    }
    if (auto it = state.find("imputeValue"); it != state.end()) {
      *it = it->get<double>() + 1.0;
      return "shifted the fill value of '" + op.name + "'";
    }
  }
  return std::nullopt;
}

struct PartitionDiff {
  size_t cells = 0;
  size_t error_rows = 0;
  size_t mismatch_count = 0;
  std::vector<Mismatch> mismatches;
};

}  // namespace

ParityReport CheckParity(const PipelineSpec& spec,
                         std::span<const RecordBatch> partitions,
                         const ParityOptions& options) {
  ParityReport report;
  auto record = [&](PartitionDiff& d, Mismatch m) {
    ++d.mismatch_count;
    if (d.mismatches.size() < options.max_recorded) {
      d.mismatches.push_back(std::move(m));
    }
  };

  const RecordBatch all = Concatenate(partitions);
  report.rows = all.num_rows();
  const size_t fit_rows = static_cast<size_t>(std::ceil(
      static_cast<double>(all.num_rows()) * (1.0 - options.holdout_fraction)));
  const std::vector<RecordBatch> fit_parts =
      Partition(all.Slice(0, fit_rows), std::max<size_t>(1, partitions.size()));

  FittedPipeline fitted;
  std::optional<ExecutablePlan> plan;
  try {
    const Pipeline pipeline = Pipeline::Compile(spec);
    // Nothing to fit on and nothing to compare.
    if (all.num_rows() == 0) return report;
    fitted = pipeline.Fit(fit_parts,
                          {.threads = options.threads, .drop_failed_rows = true});
    BundleManifest manifest = ExportBundle(fitted);
    if (options.inject_fault) report.fault = InjectFault(manifest);
    report.bundle = WriteManifest(manifest);
    plan = ExecutablePlan::Load(report.bundle);
  } catch (const Error& e) {
    report.fit_error = e;
    return report;
  }

  // Column correspondence between the two backends.
  const std::vector<FieldSpec>& runtime_fields = plan->output_fields();
  const std::vector<FieldSpec>& batch_fields = fitted.output_schema().fields();
  PartitionDiff schema_diff;
  std::vector<std::pair<size_t, size_t>> columns;  // batch index, runtime index
  for (size_t i = 0; i < batch_fields.size(); ++i) {
    const FieldSpec& f = batch_fields[i];
    auto it = std::find_if(runtime_fields.begin(), runtime_fields.end(),
                           [&](const FieldSpec& g) { return g.name == f.name; });
    if (it == runtime_fields.end() || !(*it == f)) {
      record(schema_diff, {-1, f.name, f.ToString(),
                           it == runtime_fields.end() ? "absent" : it->ToString(),
                           std::nullopt});
      continue;
    }
    columns.emplace_back(i, static_cast<size_t>(it - runtime_fields.begin()));
  }
  if (runtime_fields.size() != batch_fields.size()) {
    record(schema_diff, {-1, "<schema>", std::to_string(batch_fields.size()),
                         std::to_string(runtime_fields.size()), std::nullopt});
  }

  std::vector<size_t> offsets(partitions.size() + 1, 0);
  for (size_t p = 0; p < partitions.size(); ++p) {
    offsets[p + 1] = offsets[p] + partitions[p].num_rows();
  }
  std::vector<PartitionDiff> diffs(partitions.size());
  const std::vector<FieldSpec>& input_fields = plan->input_fields();
  ParallelFor(partitions.size(), options.threads, [&](size_t p) {
    PartitionDiff& d = diffs[p];
    const TolerantBatch batch = fitted.TransformTolerant(partitions[p]);
    std::vector<const Column*> in_cols;
    for (const FieldSpec& f : input_fields) {
      in_cols.push_back(partitions[p].Find(f.name));
    }
    std::vector<Value> inputs(in_cols.size());
    for (size_t r = 0; r < batch.batch.num_rows(); ++r) {
      const int64_t row = static_cast<int64_t>(offsets[p] + r);
      for (size_t j = 0; j < in_cols.size(); ++j) inputs[j] = in_cols[j]->values[r];
      std::vector<Value> out;
      std::optional<Error> runtime_error;
      try {
        out = plan->Execute(inputs);
      } catch (const Error& e) {
        runtime_error = e;
      }
      const std::optional<Error>& batch_error = batch.row_errors[r];
      if (batch_error || runtime_error) {
        if (batch_error && runtime_error &&
            batch_error->code() == runtime_error->code()) {
          ++d.error_rows;
        } else {
          record(d, {row, "<error>",
                     batch_error ? batch_error->what() : ErrorLabel(batch_error),
                     runtime_error ? runtime_error->what()
                                   : ErrorLabel(runtime_error),
                     std::nullopt});
        }
        continue;
      }
      for (auto [bi, ri] : columns) {
        ++d.cells;
        const Value& a = batch.batch.column(bi).values[r];
        const Value& b = out[ri];
        double delta = 0.0;
        if (!ValuesAgree(a, b, &delta)) {
          record(d, {row, batch_fields[bi].name, Render(a), Render(b),
                     delta > 0 ? std::optional<double>(delta) : std::nullopt});
        }
      }
    }
  });

  diffs.insert(diffs.begin(), std::move(schema_diff));
  for (PartitionDiff& d : diffs) {
    report.total_cells += d.cells;
    report.error_rows += d.error_rows;
    report.mismatch_count += d.mismatch_count;
    for (Mismatch& m : d.mismatches) {
      if (report.mismatches.size() < options.max_recorded) {
        report.mismatches.push_back(std::move(m));
      }
    }
  }
  return report;
}

std::vector<RecordBatch> SpecCorpus(const PipelineSpec& spec, size_t rows,
                                    uint64_t seed, size_t partitions) {
  SchemaCorpusOptions options;
  options.num_rows = rows;
  options.seed = seed;
  auto add = [](std::vector<std::string>& to, const Json& v) {
    if (!v.is_string()) return;
    const std::string s = v.get<std::string>();
    if (std::find(to.begin(), to.end(), s) == to.end()) to.push_back(s);
  };
  for (const StageConfig& stage : spec.stages) {
    for (const char* key : {"maskToken", "defaultValue"}) {
      if (auto it = stage.params.find(key); it != stage.params.end()) {
        add(options.tokens, *it);
      }
    }
    if (auto it = stage.params.find("separator"); it != stage.params.end()) {
      add(options.separators, *it);
    }
  }
  return Partition(GenerateForSchema(spec.inputs, options),
                   std::max<size_t>(1, partitions));
}

bool SweepResult::passed() const {
  return std::all_of(cases.begin(), cases.end(),
                     [](const SweepCase& c) { return c.report.passed(); });
}

SweepResult RunParitySweep(const SweepOptions& options) {
  // Redraws per case before a fit failure counts against the sweep.
  constexpr size_t kMaxDraws = 20;
  SweepResult result;
  Rng rng(options.seed);
  for (const SweepOp& op : SweepOps()) {
    if (!options.ops.empty() &&
        std::find(options.ops.begin(), options.ops.end(), op.label) ==
            options.ops.end()) {
      continue;
    }
    for (size_t i = 0; i < options.params_per_op; ++i) {
      CorpusSpec corpus;
      corpus.seed = rng.Next();
      corpus.num_rows = options.rows;
      corpus.num_partitions = static_cast<size_t>(rng.Uniform(1, 4));
      const std::vector<RecordBatch> data = GenerateCorpus(corpus);
      SweepCase c{op.label, i, {}, {}};
      for (size_t draw = 0; draw < kMaxDraws; ++draw) {
        const PipelineSpec spec = RandomSweepSpec(op, corpus, rng);
        c.spec = WriteSpec(spec);
        c.report = CheckParity(spec, data, {.threads = options.threads});
        if (!c.report.fit_error) break;
        ++result.redrawn;
      }
      result.cases.push_back(std::move(c));
    }
  }
  return result;
}

}  // namespace featherpipe

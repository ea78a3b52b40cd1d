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
#include "featherpipe/pipeline/pipeline.h"

#include "featherpipe/estimators/estimator.h"
#include "featherpipe/pipeline/dag.h"
#include "featherpipe/pipeline/parallel.h"
#include "featherpipe/transforms/transform.h"

namespace featherpipe {
namespace {

using RowErrors = std::vector<std::optional<Error>>;

std::vector<FieldSpec> InputFields(const Schema& schema,
                                   const StageConfig& stage) {
  std::vector<FieldSpec> fields;
  for (const std::string& name : stage.inputs) {
    const FieldSpec* f = schema.Find(name);
    if (f == nullptr) {
      throw Error(ErrorCode::kValidation, "unknown input column '" + name + "'",
                  {.stage = stage.name});
    }
    fields.push_back(*f);
  }
  return fields;
}

// Runs one stage over every row of `in` and appends its output columns.
// With `errors`, failing rows get null outputs and are recorded; rows that
// already failed are skipped.
RecordBatch ApplyStage(const RecordBatch& in, const FittedStage& stage,
                       RowErrors* errors, std::optional<size_t> partition) {
  const size_t n = in.num_rows();
  std::vector<const std::vector<Value>*> sources;
  for (const std::string& name : stage.inputs) {
    const Column* col = in.Find(name);
    if (col == nullptr) {
      throw Error(ErrorCode::kValidation, "missing column '" + name + "'",
                  {.stage = stage.name});
    }
    sources.push_back(&col->values);
  }
  std::vector<Column> outs;
  for (const FieldSpec& f : stage.outputs) {
    outs.push_back({f, {}});
    outs.back().values.reserve(n);
  }
  std::vector<Value> args(sources.size());
  for (size_t r = 0; r < n; ++r) {
    if (errors != nullptr && (*errors)[r]) {
      for (auto& c : outs) c.values.emplace_back();
      continue;
    }
    for (size_t j = 0; j < sources.size(); ++j) args[j] = (*sources[j])[r];
    try {
      std::vector<Value> res = stage.apply(args);
      for (size_t o = 0; o < outs.size(); ++o) {
        outs[o].values.push_back(std::move(res[o]));
      }
    } catch (const Error& e) {
      ErrorContext ctx{.stage = stage.name, .row = static_cast<int64_t>(r)};
      if (partition) ctx.partition = static_cast<int64_t>(*partition);
      if (errors == nullptr) throw e.WithContext(ctx);
      (*errors)[r] = e.WithContext(ctx);
      for (auto& c : outs) c.values.emplace_back();
    }
  }
  RecordBatch out = in;
  for (auto& c : outs) {
    out = out.WithColumn(std::make_shared<const Column>(std::move(c)));
  }
  return out;
}

}  // namespace

Pipeline Pipeline::Compile(PipelineSpec spec) {
  Pipeline p;
  p.order_ = TopoOrder(spec);
  p.schema_ = spec.inputs;
  for (size_t i : p.order_) {
    const StageConfig& stage = spec.stages[i];
    const std::vector<FieldSpec> fields = InputFields(p.schema_, stage);
    std::vector<FieldSpec> outs;
    if (IsEstimator(stage.op)) {
      outs = Estimator::Create(stage.op, stage.name, stage.params, fields,
                               stage.outputs)
                 ->output_fields();
    } else {
      outs = Transform::Create(stage.op, stage.name, stage.params, fields,
                               stage.outputs)
                 .output_fields();
    }
    for (FieldSpec& f : outs) p.schema_.Add(std::move(f));
  }
  p.spec_ = std::move(spec);
  return p;
}

FittedPipeline Pipeline::Fit(std::span<const RecordBatch> partitions,
                             const FitOptions& options,
                             std::vector<DroppedRow>* dropped) const {
  FittedPipeline fp;
  fp.input_schema_ = spec_.inputs;
  const size_t k = partitions.size();
  std::vector<RecordBatch> work(k);
  std::vector<RowErrors> errors(k);
  for (size_t p = 0; p < k; ++p) {
    try {
      work[p] = fp.Conform(partitions[p]);
    } catch (const Error& e) {
      throw e.WithContext({.partition = static_cast<int64_t>(p)});
    }
    errors[p].resize(work[p].num_rows());
  }
  auto row_errors = [&](size_t p) -> RowErrors* {
    return options.drop_failed_rows ? &errors[p] : nullptr;
  };

  Schema schema = spec_.inputs;
  auto stages = std::make_shared<std::vector<FittedStage>>();
  for (size_t i : order_) {
    const StageConfig& cfg = spec_.stages[i];
    const std::vector<FieldSpec> fields = InputFields(schema, cfg);
    FittedStage stage{cfg.name, cfg.op, cfg.inputs, {}, {}, std::nullopt, {}};

    if (IsEstimator(cfg.op)) {
      std::shared_ptr<const Estimator> est =
          Estimator::Create(cfg.op, cfg.name, cfg.params, fields, cfg.outputs);
      std::vector<std::unique_ptr<EstimatorPartial>> partials(k);
      ParallelFor(k, options.threads, [&](size_t p) {
        partials[p] = est->NewPartial();
        const RecordBatch& b = work[p];
        std::vector<const std::vector<Value>*> sources;
        for (const std::string& name : cfg.inputs) {
          sources.push_back(&b.Find(name)->values);
        }
        std::vector<Value> args(sources.size());
        for (size_t r = 0; r < b.num_rows(); ++r) {
          if (errors[p][r]) continue;
          for (size_t j = 0; j < sources.size(); ++j) args[j] = (*sources[j])[r];
          try {
            est->Accumulate(*partials[p], args);
          } catch (const Error& e) {
            Error located = e.WithContext({.stage = cfg.name,
                                           .partition = static_cast<int64_t>(p),
                                           .row = static_cast<int64_t>(r)});
            if (!options.drop_failed_rows) throw located;
            errors[p][r] = std::move(located);
          }
        }
      });
      std::unique_ptr<EstimatorPartial> merged = est->NewPartial();
      for (const auto& part : partials) est->Merge(*merged, *part);
      std::shared_ptr<const FittedEstimator> fitted = est->Finalize(*merged);
      stage.outputs = fitted->output_fields();
      stage.params = est->params();
      stage.state = fitted->State();
      stage.apply = [fitted](std::span<const Value> in) {
        return fitted->Apply(in);
      };
    } else {
      auto t = std::make_shared<const Transform>(Transform::Create(
          cfg.op, cfg.name, cfg.params, fields, cfg.outputs));
      stage.outputs = t->output_fields();
      stage.params = t->params();
      stage.apply = [t](std::span<const Value> in) { return t->Apply(in); };
    }

    ParallelFor(k, options.threads, [&](size_t p) {
      work[p] = ApplyStage(work[p], stage, row_errors(p), p);
    });
    for (const FieldSpec& f : stage.outputs) schema.Add(f);
    stages->push_back(std::move(stage));
  }

  if (dropped != nullptr) {
    for (size_t p = 0; p < k; ++p) {
      for (size_t r = 0; r < errors[p].size(); ++r) {
        if (errors[p][r]) dropped->push_back({p, r, *errors[p][r]});
      }
    }
  }
  fp.output_schema_ = std::move(schema);
  fp.stages_ = std::move(stages);
  return fp;
}

RecordBatch FittedPipeline::Conform(const RecordBatch& batch) const {
  std::vector<std::string> names;
  for (const FieldSpec& f : input_schema_.fields()) {
    const Column* col = batch.Find(f.name);
    if (col == nullptr) {
      throw Error(ErrorCode::kValidation, "batch lacks input column",
                  {.column = f.name});
    }
    if (!(col->field == f)) {
      throw Error(ErrorCode::kValidation,
                  "column is " + col->field.ToString() + ", pipeline expects " +
                      f.ToString(),
                  {.column = f.name});
    }
    names.push_back(f.name);
  }
  if (batch.schema() == input_schema_) return batch;
  return batch.Select(names);
}

RecordBatch FittedPipeline::Transform(const RecordBatch& batch) const {
  RecordBatch out = Conform(batch);
  for (const FittedStage& stage : *stages_) {
    out = ApplyStage(out, stage, nullptr, std::nullopt);
  }
  return out;
}

std::vector<RecordBatch> FittedPipeline::TransformPartitions(
    std::span<const RecordBatch> partitions, size_t threads) const {
  std::vector<RecordBatch> out(partitions.size());
  ParallelFor(partitions.size(), threads, [&](size_t p) {
    RecordBatch b = Conform(partitions[p]);
    for (const FittedStage& stage : *stages_) {
      b = ApplyStage(b, stage, nullptr, p);
    }
    out[p] = std::move(b);
  });
  return out;
}

TolerantBatch FittedPipeline::TransformTolerant(const RecordBatch& batch) const {
  TolerantBatch result;
  result.batch = Conform(batch);
  result.row_errors.resize(result.batch.num_rows());
  for (const FittedStage& stage : *stages_) {
    result.batch =
        ApplyStage(result.batch, stage, &result.row_errors, std::nullopt);
  }
  return result;
}

}  // namespace featherpipe

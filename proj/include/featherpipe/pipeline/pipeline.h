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
#ifndef FEATHERPIPE_PIPELINE_PIPELINE_H_
#define FEATHERPIPE_PIPELINE_PIPELINE_H_

// Staged fitting and columnar batch execution.
//
// Fit walks the stages in topological order. A transformer stage is applied
// to every partition; an estimator stage first accumulates one partial per
// partition (concurrently), merges the partials in partition order and
// finalizes, and only then is applied. Downstream estimators therefore
// always see upstream-transformed data.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "featherpipe/core/error.h"
#include "featherpipe/core/record_batch.h"
#include "featherpipe/pipeline/spec.h"

namespace featherpipe {

class FittedPipeline;

struct FitOptions {
  // Partition workers; 0 picks the hardware concurrency.
  size_t threads = 0;
  // When set, a row that fails any stage is left out of every later stage
  // (and of estimator fits) instead of aborting the fit.
  bool drop_failed_rows = false;
};

struct DroppedRow {
  size_t partition;
  size_t row;
  Error error;
};

// A validated, not yet fitted pipeline.
class Pipeline {
 public:
  // Orders the stages and type-checks each one against the columns it
  // reads. Output dims that depend on fitting stay ShapeSpec::kVariable.
  static Pipeline Compile(PipelineSpec spec);

  const PipelineSpec& spec() const { return spec_; }
  const std::vector<size_t>& order() const { return order_; }
  // Inputs plus every stage output, in execution order.
  const Schema& inferred_schema() const { return schema_; }

  // Errors carry stage, partition and row. `dropped` (optional) receives
  // the rows skipped under FitOptions::drop_failed_rows.
  FittedPipeline Fit(std::span<const RecordBatch> partitions,
                     const FitOptions& options = {},
                     std::vector<DroppedRow>* dropped = nullptr) const;

 private:
  PipelineSpec spec_;
  std::vector<size_t> order_;
  Schema schema_;
};

struct FittedStage {
  std::string name;
  OpKind op;
  std::vector<std::string> inputs;
  std::vector<FieldSpec> outputs;
  // Effective parameters (defaults filled in).
  Json params;
  // Learned assets for estimator stages.
  std::optional<Json> state;
  // One row of input values -> one value per output.
  std::function<std::vector<Value>(std::span<const Value>)> apply;
};

// Per-row outcome of a tolerant batch transform.
struct TolerantBatch {
  RecordBatch batch;
  // Failed rows have null in every stage output.
  std::vector<std::optional<Error>> row_errors;
};

// Immutable; safe for concurrent Transform calls.
class FittedPipeline {
 public:
  const Schema& input_schema() const { return input_schema_; }
  // Inputs plus every stage output with fitted (fixed) shapes.
  const Schema& output_schema() const { return output_schema_; }
  const std::vector<FittedStage>& stages() const { return *stages_; }

  // The batch must carry every input field (extra columns are dropped).
  // Throws the first failing row's error with stage, column and row.
  RecordBatch Transform(const RecordBatch& batch) const;
  // Partition-parallel Transform; errors also carry the partition.
  std::vector<RecordBatch> TransformPartitions(
      std::span<const RecordBatch> partitions, size_t threads = 0) const;
  // Never throws for row-level failures; records them instead.
  TolerantBatch TransformTolerant(const RecordBatch& batch) const;

 private:
  friend class Pipeline;
  RecordBatch Conform(const RecordBatch& batch) const;

  Schema input_schema_;
  Schema output_schema_;
  std::shared_ptr<const std::vector<FittedStage>> stages_;
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_PIPELINE_PIPELINE_H_

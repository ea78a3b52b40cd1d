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
#ifndef FEATHERPIPE_ESTIMATORS_ESTIMATOR_H_
#define FEATHERPIPE_ESTIMATORS_ESTIMATOR_H_

// Pipeline-facing wrapper around the estimator families. Fitting follows
// the partial-aggregate contract: each partition accumulates its own
// partial, partials are merged, and the merged partial is finalized into
// an immutable fitted stage.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/value.h"
#include "featherpipe/transforms/catalog.h"
#include "featherpipe/transforms/transform.h"

namespace featherpipe {

class EstimatorPartial {
 public:
  virtual ~EstimatorPartial() = default;
};

class FittedEstimator {
 public:
  virtual ~FittedEstimator() = default;

  // One row of raw inputs; errors carry the stage and column.
  std::vector<Value> Apply(std::span<const Value> inputs) const;

  const std::string& stage() const { return stage_; }
  const std::vector<FieldSpec>& output_fields() const { return outputs_; }
  // Learned assets as persisted in bundles: {"labels": [...]},
  // {"mean": [...], "std": [...]} or {"imputeValue": x}.
  virtual Json State() const = 0;

 protected:
  FittedEstimator(std::string stage, std::vector<FieldSpec> inputs,
                  std::vector<FieldSpec> outputs, InputAdapter adapter);
  virtual std::vector<Value> ApplyAdapted(std::span<const Value> in) const = 0;

 private:
  std::string stage_;
  std::vector<FieldSpec> inputs_;
  std::vector<FieldSpec> outputs_;
  InputAdapter adapter_;
};

class Estimator {
 public:
  // Throws Error(kValidation / kDTypeMismatch / kShapeMismatch) for bad
  // configurations.
  static std::unique_ptr<const Estimator> Create(
      OpKind kind, const std::string& stage, const Json& params,
      std::span<const FieldSpec> inputs, std::span<const std::string> outputs);

  virtual ~Estimator() = default;

  OpKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }
  const std::vector<FieldSpec>& input_fields() const { return inputs_; }
  // Pre-fit output fields; dims that depend on the fit are kVariable.
  const std::vector<FieldSpec>& output_fields() const { return outputs_; }
  const Json& params() const { return params_; }

  virtual std::unique_ptr<EstimatorPartial> NewPartial() const = 0;
  // One row of raw inputs.
  void Accumulate(EstimatorPartial& partial, std::span<const Value> row) const;
  virtual void Merge(EstimatorPartial& into,
                     const EstimatorPartial& from) const = 0;
  virtual std::shared_ptr<const FittedEstimator> Finalize(
      const EstimatorPartial& partial) const = 0;

 protected:
  Estimator() = default;
  virtual void AccumulateAdapted(EstimatorPartial& partial,
                                 std::span<const Value> row) const = 0;

  OpKind kind_ = OpKind::kStringIndex;
  std::string stage_;
  std::vector<FieldSpec> inputs_;
  std::vector<FieldSpec> effective_inputs_;
  std::vector<FieldSpec> outputs_;
  Json params_;
  InputAdapter adapter_;
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_ESTIMATORS_ESTIMATOR_H_

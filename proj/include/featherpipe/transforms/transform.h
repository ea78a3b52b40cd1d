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
#ifndef FEATHERPIPE_TRANSFORMS_TRANSFORM_H_
#define FEATHERPIPE_TRANSFORMS_TRANSFORM_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/value.h"
#include "featherpipe/transforms/catalog.h"

namespace featherpipe {

// Converts each operand to the dtype its op consumes. Built from the
// declared input fields and the effective fields after `inputDtype` and the
// op's own auto-coercions (string ops render, numeric ops widen).
class InputAdapter {
 public:
  InputAdapter() = default;
  InputAdapter(std::span<const FieldSpec> declared,
               std::span<const FieldSpec> effective);

  // Throws Error(kCoercion) naming the input column.
  Value Adapt(size_t index, const Value& value) const;
  std::vector<Value> AdaptAll(std::span<const Value> values) const;
  // True when no operand needs converting.
  bool identity() const { return identity_; }

 private:
  std::vector<std::optional<DType>> targets_;
  std::vector<std::string> names_;
  bool identity_ = true;
};

// Static typing helpers shared with the estimator stages.
std::vector<FieldSpec> WithInputDtype(std::span<const FieldSpec> fields,
                                      std::optional<DType> dtype);
// Any dtype renders to string.
void RequireString(FieldSpec& field);
// int64/bool widen to float64; string is a DTypeMismatch.
void RequireFloat(FieldSpec& field, const std::string& stage);

class TransformKernel;

// A validated, ready-to-run stateless stage. Immutable and safe to share
// across threads.
class Transform {
 public:
  // Throws Error(kValidation / kDTypeMismatch / kShapeMismatch /
  // kIndexOutOfRange / kInvalidPattern) for bad configurations.
  static Transform Create(OpKind kind, const std::string& stage,
                          const Json& params,
                          std::span<const FieldSpec> inputs,
                          std::span<const std::string> outputs);

  OpKind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }
  const std::vector<FieldSpec>& input_fields() const { return inputs_; }
  const std::vector<FieldSpec>& output_fields() const { return outputs_; }
  // Effective parameters with defaults filled in.
  const Json& params() const { return params_; }

  // One row: `inputs` follow input_fields(); returns one value per output.
  // Errors carry the stage and column.
  std::vector<Value> Apply(std::span<const Value> inputs) const;

 private:
  OpKind kind_ = OpKind::kCast;
  std::string stage_;
  std::vector<FieldSpec> inputs_;
  std::vector<FieldSpec> outputs_;
  Json params_;
  InputAdapter adapter_;
  std::shared_ptr<const TransformKernel> kernel_;
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_TRANSFORMS_TRANSFORM_H_

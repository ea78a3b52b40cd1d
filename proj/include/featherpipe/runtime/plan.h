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
#ifndef FEATHERPIPE_RUNTIME_PLAN_H_
#define FEATHERPIPE_RUNTIME_PLAN_H_

// Row-at-a-time execution of a bundle. The runtime interprets fitted state
// on its own (lookup tables, scaler statistics, fill values) and depends on
// nothing but the core model and the stateless transform catalog.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "featherpipe/core/error.h"
#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/value.h"
#include "featherpipe/runtime/manifest.h"

namespace featherpipe {

// Strict rejects fields the bundle does not know; lenient ignores them.
// Missing fields are an error in both modes.
enum class RowMode { kStrict, kLenient };

using Row = std::map<std::string, Value, std::less<>>;

struct RowError {
  size_t index;
  Error error;
};

struct BatchResult {
  // One entry per request row, std::nullopt where the row failed.
  std::vector<std::optional<std::vector<Value>>> rows;
  std::vector<RowError> errors;
};

class ExecutablePlan {
 public:
  // Throws Error(kManifest) for anything that keeps the bundle from
  // running: bad structure, unknown ops, missing or inconsistent assets,
  // references to columns that are never produced.
  static ExecutablePlan Load(std::string_view document,
                             RowMode mode = RowMode::kStrict);
  static ExecutablePlan FromManifest(BundleManifest manifest,
                                     RowMode mode = RowMode::kStrict);

  const BundleManifest& manifest() const;
  // Re-serializes the manifest; Load(x).ToDocument() is canonical.
  std::string ToDocument() const;
  RowMode mode() const;

  const std::vector<FieldSpec>& input_fields() const;
  // Inputs first, then every op output in op order.
  const std::vector<FieldSpec>& output_fields() const;

  // Inputs in input_fields() order. Returns one value per output_fields().
  // Throws Error(kRowValidation) for non-conforming inputs and the op's own
  // error (with stage and column) when a transform fails.
  std::vector<Value> Execute(std::span<const Value> inputs) const;
  std::vector<Value> Execute(const Row& row) const;
  // A JSON object keyed by input field name.
  std::vector<Value> ExecuteJson(const Json& row) const;
  // Element-wise ExecuteJson; failures are collected, not thrown.
  BatchResult ExecuteBatch(std::span<const Json> rows) const;

  // {column: value} for every output field.
  Json OutputToJson(std::span<const Value> outputs) const;

  class Impl;

 private:
  explicit ExecutablePlan(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_RUNTIME_PLAN_H_

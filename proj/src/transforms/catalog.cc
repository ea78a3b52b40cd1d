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
#include "featherpipe/transforms/catalog.h"

#include <array>
#include <utility>

namespace featherpipe {
namespace {

constexpr std::array<std::pair<OpKind, std::string_view>, 24> kNames = {{
    {OpKind::kHashIndex, "hash_index"},
    {OpKind::kBloomEncode, "bloom_encode"},
    {OpKind::kLogTransform, "log_transform"},
    {OpKind::kArithmetic, "arithmetic"},
    {OpKind::kStringToList, "string_to_list"},
    {OpKind::kRegexExtract, "regex_extract"},
    {OpKind::kStringCase, "string_case"},
    {OpKind::kStringConcat, "string_concat"},
    {OpKind::kDateDecompose, "date_decompose"},
    {OpKind::kDateDiffDays, "date_diff_days"},
    {OpKind::kHaversine, "haversine_km"},
    {OpKind::kLogical, "logical"},
    {OpKind::kCompare, "compare"},
    {OpKind::kConditionalSelect, "conditional_select"},
    {OpKind::kArrayAssemble, "array_assemble"},
    {OpKind::kArrayDisassemble, "array_disassemble"},
    {OpKind::kArraySlice, "array_slice"},
    {OpKind::kListAggregate, "list_aggregate"},
    {OpKind::kCast, "cast"},
    {OpKind::kStringIndex, "string_index"},
    {OpKind::kSharedStringIndex, "shared_string_index"},
    {OpKind::kOneHot, "one_hot"},
    {OpKind::kStandardScale, "standard_scale"},
    {OpKind::kImpute, "impute"},
}};

constexpr std::array<OpKind, 19> kTransformers = {
    OpKind::kHashIndex,         OpKind::kBloomEncode,
    OpKind::kLogTransform,      OpKind::kArithmetic,
    OpKind::kStringToList,      OpKind::kRegexExtract,
    OpKind::kStringCase,        OpKind::kStringConcat,
    OpKind::kDateDecompose,     OpKind::kDateDiffDays,
    OpKind::kHaversine,         OpKind::kLogical,
    OpKind::kCompare,           OpKind::kConditionalSelect,
    OpKind::kArrayAssemble,     OpKind::kArrayDisassemble,
    OpKind::kArraySlice,        OpKind::kListAggregate,
    OpKind::kCast,
};

constexpr std::array<OpKind, 5> kEstimators = {
    OpKind::kStringIndex, OpKind::kSharedStringIndex, OpKind::kOneHot,
    OpKind::kStandardScale, OpKind::kImpute,
};

}  // namespace

std::string_view OpKindName(OpKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<OpKind> ParseOpKind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool IsEstimator(OpKind kind) {
  for (OpKind k : kEstimators) {
    if (k == kind) return true;
  }
  return false;
}

std::span<const OpKind> TransformerKinds() { return kTransformers; }
std::span<const OpKind> EstimatorKinds() { return kEstimators; }

}  // namespace featherpipe

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
#ifndef FEATHERPIPE_TRANSFORMS_CATALOG_H_
#define FEATHERPIPE_TRANSFORMS_CATALOG_H_

#include <optional>
#include <span>
#include <string_view>

namespace featherpipe {

// Every op tag a pipeline stage or bundle op may carry.
enum class OpKind {
  // Stateless transformers.
  kHashIndex,
  kBloomEncode,
  kLogTransform,
  kArithmetic,
  kStringToList,
  kRegexExtract,
  kStringCase,
  kStringConcat,
  kDateDecompose,
  kDateDiffDays,
  kHaversine,
  kLogical,
  kCompare,
  kConditionalSelect,
  kArrayAssemble,
  kArrayDisassemble,
  kArraySlice,
  kListAggregate,
  kCast,
  // Estimators: need a fit pass before they can transform.
  kStringIndex,
  kSharedStringIndex,
  kOneHot,
  kStandardScale,
  kImpute,
};

std::string_view OpKindName(OpKind kind);
std::optional<OpKind> ParseOpKind(std::string_view name);
bool IsEstimator(OpKind kind);

std::span<const OpKind> TransformerKinds();
std::span<const OpKind> EstimatorKinds();

}  // namespace featherpipe

#endif  // FEATHERPIPE_TRANSFORMS_CATALOG_H_

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
#ifndef FEATHERPIPE_ESTIMATORS_IMPUTER_H_
#define FEATHERPIPE_ESTIMATORS_IMPUTER_H_

#include <optional>
#include <string_view>
#include <vector>

#include "featherpipe/core/value.h"
#include "featherpipe/estimators/exact_sum.h"

namespace featherpipe {

enum class ImputeStrategy { kMean, kMedian };

std::optional<ImputeStrategy> ParseImputeStrategy(std::string_view name);
std::string_view ImputeStrategyName(ImputeStrategy strategy);

// A leaf is missing when it is null, NaN, or equal to the sentinel.
bool IsMissing(const Value& leaf, std::optional<double> sentinel);

// Mean keeps an exact running sum; median keeps every non-missing value
// (sorted), which is exact and fine at desk scale.
class ImputePartial {
 public:
  ImputePartial(ImputeStrategy strategy, std::optional<double> sentinel);

  // Walks every leaf of `value`.
  void AddValue(const Value& value);
  void Add(double x);
  void Merge(const ImputePartial& other);

  int64_t count() const;
  // Observed values in ascending order (median strategy only).
  std::vector<double> SortedValues() const;

  // Throws Error(kAllMissing) when nothing was observed.
  double Finalize() const;

  // Same strategy and the same multiset of observations.
  friend bool operator==(const ImputePartial& a, const ImputePartial& b);

 private:
  ImputeStrategy strategy_;
  std::optional<double> sentinel_;
  ExactMoments moments_;
  std::vector<double> values_;  // insertion order
};

// Replaces missing leaves with `fill`; other leaves pass through. `rank`
// is the column rank: a null list (above the leaf level) stays null.
Value ApplyImpute(double fill, std::optional<double> sentinel,
                  const Value& value, int rank);

}  // namespace featherpipe

#endif  // FEATHERPIPE_ESTIMATORS_IMPUTER_H_

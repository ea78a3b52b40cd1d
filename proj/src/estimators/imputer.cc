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
#include "featherpipe/estimators/imputer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "featherpipe/core/error.h"

namespace featherpipe {

std::optional<ImputeStrategy> ParseImputeStrategy(std::string_view name) {
  if (name == "mean") return ImputeStrategy::kMean;
  if (name == "median") return ImputeStrategy::kMedian;
  return std::nullopt;
}

std::string_view ImputeStrategyName(ImputeStrategy strategy) {
  return strategy == ImputeStrategy::kMean ? "mean" : "median";
}

bool IsMissing(const Value& leaf, std::optional<double> sentinel) {
  if (leaf.is_null()) return true;
  const double x = leaf.AsFloat();
  if (std::isnan(x)) return true;
  return sentinel && x == *sentinel;
}

ImputePartial::ImputePartial(ImputeStrategy strategy,
                             std::optional<double> sentinel)
    : strategy_(strategy), sentinel_(sentinel) {}

void ImputePartial::AddValue(const Value& value) {
  if (value.is_list()) {
    for (const Value& item : value.AsList()) AddValue(item);
    return;
  }
  if (IsMissing(value, sentinel_)) return;
  Add(value.AsFloat());
}

void ImputePartial::Add(double x) {
  if (std::isnan(x) || (sentinel_ && x == *sentinel_)) return;
  // Infinities are kept out of both statistics so the fill value stays
  // finite and serializable.
  if (!std::isfinite(x)) return;
  if (strategy_ == ImputeStrategy::kMean) {
    moments_.Add(x);
  } else {
    values_.push_back(x);
  }
}

void ImputePartial::Merge(const ImputePartial& other) {
  moments_.Merge(other.moments_);
  values_.insert(values_.end(), other.values_.begin(), other.values_.end());
}

int64_t ImputePartial::count() const {
  return strategy_ == ImputeStrategy::kMean
             ? moments_.count()
             : static_cast<int64_t>(values_.size());
}

std::vector<double> ImputePartial::SortedValues() const {
  std::vector<double> sorted = values_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

double ImputePartial::Finalize() const {
  if (count() == 0) {
    throw Error(ErrorCode::kAllMissing, "every observed value is missing");
  }
  if (strategy_ == ImputeStrategy::kMean) return moments_.Mean();
  const std::vector<double> sorted = SortedValues();
  const size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return std::midpoint(sorted[n / 2 - 1], sorted[n / 2]);
}

bool operator==(const ImputePartial& a, const ImputePartial& b) {
  return a.strategy_ == b.strategy_ && a.sentinel_ == b.sentinel_ &&
         a.moments_ == b.moments_ && a.SortedValues() == b.SortedValues();
}

Value ApplyImpute(double fill, std::optional<double> sentinel,
                  const Value& value, int rank) {
  if (rank > 0) {
    if (value.is_null()) return value;
    Value::List out;
    out.reserve(value.AsList().size());
    for (const Value& item : value.AsList()) {
      out.push_back(ApplyImpute(fill, sentinel, item, rank - 1));
    }
    return Value::MakeList(std::move(out));
  }
  if (IsMissing(value, sentinel)) return Value::Float(fill);
  return value;
}

}  // namespace featherpipe

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
#ifndef FEATHERPIPE_ESTIMATORS_SCALER_H_
#define FEATHERPIPE_ESTIMATORS_SCALER_H_

#include <cstddef>
#include <vector>

#include "featherpipe/core/value.h"
#include "featherpipe/estimators/exact_sum.h"

namespace featherpipe {

// Standard deviations below this scale to 0.0 instead of dividing.
inline constexpr double kMinStdDev = 1e-12;

struct ScalerState {
  std::vector<double> mean;
  std::vector<double> stddev;

  friend bool operator==(const ScalerState&, const ScalerState&) = default;
};

// Per-position moments of fixed-width float vectors (width 1 for scalar
// columns). Rows that are null or hold any null/non-finite leaf are skipped.
class MomentsPartial {
 public:
  explicit MomentsPartial(size_t width);

  void AddRow(const Value& row);
  void AddVector(const std::vector<double>& row);
  void Merge(const MomentsPartial& other);

  size_t width() const { return positions_.size(); }
  int64_t count() const;
  const ExactMoments& position(size_t i) const { return positions_[i]; }

  // Population mean and standard deviation. Throws Error(kAllMissing) when
  // no row was accumulated.
  ScalerState Finalize() const;

  friend bool operator==(const MomentsPartial&, const MomentsPartial&) = default;

 private:
  std::vector<ExactMoments> positions_;
};

// (x - mean) / std per position; positions with std < kMinStdDev give 0.0.
// Null leaves stay null. Throws Error(kShapeMismatch) on a wrong width.
Value ApplyScaler(const ScalerState& state, const Value& value);

}  // namespace featherpipe

#endif  // FEATHERPIPE_ESTIMATORS_SCALER_H_

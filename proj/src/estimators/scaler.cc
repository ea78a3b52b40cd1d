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
#include "featherpipe/estimators/scaler.h"

#include <cmath>

#include "featherpipe/core/error.h"

namespace featherpipe {

MomentsPartial::MomentsPartial(size_t width) : positions_(width) {}

void MomentsPartial::AddRow(const Value& row) {
  if (row.is_null()) return;
  std::vector<double> leaves;
  if (row.is_list()) {
    for (const Value& v : row.AsList()) {
      if (v.is_null()) return;
      leaves.push_back(v.AsFloat());
    }
  } else {
    leaves.push_back(row.AsFloat());
  }
  AddVector(leaves);
}

void MomentsPartial::AddVector(const std::vector<double>& row) {
  if (row.size() != positions_.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected a vector of width " +
                    std::to_string(positions_.size()) + ", got " +
                    std::to_string(row.size()));
  }
  for (double x : row) {
    if (!std::isfinite(x)) return;
  }
  for (size_t i = 0; i < row.size(); ++i) positions_[i].Add(row[i]);
}

void MomentsPartial::Merge(const MomentsPartial& other) {
  if (other.positions_.size() != positions_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "merging moments of different width");
  }
  for (size_t i = 0; i < positions_.size(); ++i) {
    positions_[i].Merge(other.positions_[i]);
  }
}

int64_t MomentsPartial::count() const {
  return positions_.empty() ? 0 : positions_.front().count();
}

ScalerState MomentsPartial::Finalize() const {
  if (count() == 0) {
    throw Error(ErrorCode::kAllMissing,
                "standard scaling saw no complete finite rows");
  }
  ScalerState state;
  for (const ExactMoments& m : positions_) {
    state.mean.push_back(m.Mean());
    state.stddev.push_back(m.StdDev());
  }
  return state;
}

namespace {

Value ScaleLeaf(const Value& leaf, double mean, double stddev) {
  if (leaf.is_null()) return leaf;
  if (stddev < kMinStdDev) return Value::Float(0.0);
  return Value::Float((leaf.AsFloat() - mean) / stddev);
}

}  // namespace

Value ApplyScaler(const ScalerState& state, const Value& value) {
  if (value.is_null()) return value;
  if (!value.is_list()) {
    return ScaleLeaf(value, state.mean.at(0), state.stddev.at(0));
  }
  const auto& items = value.AsList();
  if (items.size() != state.mean.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "scaler fitted on width " + std::to_string(state.mean.size()) +
                    ", got " + std::to_string(items.size()));
  }
  Value::List out;
  out.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    out.push_back(ScaleLeaf(items[i], state.mean[i], state.stddev[i]));
  }
  return Value::MakeList(std::move(out));
}

}  // namespace featherpipe

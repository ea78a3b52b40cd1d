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
#ifndef FEATHERPIPE_ESTIMATORS_EXACT_SUM_H_
#define FEATHERPIPE_ESTIMATORS_EXACT_SUM_H_

#include <cstdint>
#include <memory>

namespace featherpipe {

// Count, sum and sum of squares of finite doubles, held exactly as big
// integers (sums scaled by 2^1074, squares by 2^2148). Merging is exact, so
// any partitioning of the same multiset of values finalizes to the same
// bits. Derived quantities are rounded once, to nearest.
class ExactMoments {
 public:
  ExactMoments();
  ~ExactMoments();
  ExactMoments(const ExactMoments& other);
  ExactMoments& operator=(const ExactMoments& other);
  ExactMoments(ExactMoments&&) noexcept;
  ExactMoments& operator=(ExactMoments&&) noexcept;

  // Precondition: std::isfinite(x).
  void Add(double x);
  void Merge(const ExactMoments& other);

  int64_t count() const { return count_; }
  // Sum of values, correctly rounded.
  double Sum() const;
  // Arithmetic mean; 0 when empty.
  double Mean() const;
  // Sum of squared deviations from the mean (the "M2" of pairwise
  // variance updates); 0 when empty.
  double M2() const;
  // Population variance M2 / n; 0 when empty.
  double Variance() const;
  // sqrt of the population variance, rounded once from a 256-bit
  // intermediate.
  double StdDev() const;

  friend bool operator==(const ExactMoments& a, const ExactMoments& b);

 private:
  struct Impl;
  int64_t count_ = 0;
  std::unique_ptr<Impl> impl_;
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_ESTIMATORS_EXACT_SUM_H_

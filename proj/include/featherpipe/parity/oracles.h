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
#ifndef FEATHERPIPE_PARITY_ORACLES_H_
#define FEATHERPIPE_PARITY_ORACLES_H_

// Brute-force reference computations for estimator state. Deliberately
// naive and independent of the streaming partials they check.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "featherpipe/core/value.h"

namespace featherpipe {

// Counts every non-null string leaf except the mask token, then sorts.
// order is one of frequencyDesc, frequencyAsc, alphabeticalAsc,
// alphabeticalDesc; frequency ties break by ascending byte order.
std::vector<std::string> OracleVocabulary(std::span<const Value> cells,
                                          const std::string& order,
                                          const std::optional<std::string>& mask);

struct OracleMomentsResult {
  std::vector<double> mean;
  std::vector<double> stddev;  // population
  size_t rows = 0;
};

// Two passes in long double with compensated sums. Rows that are null or
// hold a null / non-finite element are skipped. A scalar cell is a row of
// width 1.
OracleMomentsResult OracleMoments(std::span<const Value> cells, size_t width);

// Leaves that are null, NaN, infinite or equal to the sentinel are skipped.
std::vector<double> OracleObserved(std::span<const Value> cells,
                                   std::optional<double> sentinel);
double OracleMean(std::vector<double> values);
double OracleMedian(std::vector<double> values);

}  // namespace featherpipe

#endif  // FEATHERPIPE_PARITY_ORACLES_H_

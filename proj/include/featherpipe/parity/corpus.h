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
#ifndef FEATHERPIPE_PARITY_CORPUS_H_
#define FEATHERPIPE_PARITY_CORPUS_H_

// Deterministic synthetic data. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions are implemented
// here because the standard library ones differ across vendors.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "featherpipe/core/record_batch.h"

namespace featherpipe {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Inclusive bounds.
  int64_t Uniform(int64_t lo, int64_t hi);
  // [lo, hi).
  double UniformReal(double lo, double hi);
  bool Bernoulli(double p);
  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[static_cast<size_t>(Uniform(0, static_cast<int64_t>(items.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

// The mask / padding token the generator plants in string columns.
inline constexpr const char* kPadToken = "PADDED";
// Numeric sentinel planted in "amount" and "count".
inline constexpr double kSentinel = -1.0;

struct CorpusSpec {
  uint64_t seed = 7;
  size_t num_rows = 1000;
  size_t num_partitions = 1;
  // Chance that a top-level cell is null; list leaves use half of it.
  double null_probability = 0.05;
  // Chance of a pad token / sentinel / zero mask (kept >= 5%).
  double mask_probability = 0.08;
  // Length of the rank-1 list columns; rank-2 columns are [2][3].
  int64_t list_length = 4;
};

// Scalars: cat, cat2, big_cat, text, code, word, num_str (string); id,
// count (int64); x, y, amount, lat1, lon1, lat2, lon2 (float64); date_a,
// date_b (ISO date strings); flag_a, flag_b (bool).
// Lists: tags, scores, counts, flags (list[L]); nested_tags, matrix
// (list[2][3]).
Schema CorpusSchema(const CorpusSpec& spec);
RecordBatch GenerateCorpusBatch(const CorpusSpec& spec);
std::vector<RecordBatch> GenerateCorpus(const CorpusSpec& spec);

// Random rows for an arbitrary schema. String leaves are words joined by
// one of `separators`, ISO dates or numeric strings; each of `tokens`
// (mask and padding tokens) is planted with probability >= 5%. Integers
// repeat often enough to act as categorical ids.
struct SchemaCorpusOptions {
  size_t num_rows = 1000;
  uint64_t seed = 7;
  size_t num_partitions = 1;
  double null_probability = 0.05;
  std::vector<std::string> tokens;
  std::vector<std::string> separators;
};
RecordBatch GenerateForSchema(const Schema& schema,
                              const SchemaCorpusOptions& options);

// Search-ranking style records for the long-chain pipeline: dates,
// magnitudes spanning several orders, coordinates and categoricals.
Schema LtrSchema();
RecordBatch GenerateLtrBatch(size_t num_rows, uint64_t seed);

}  // namespace featherpipe

#endif  // FEATHERPIPE_PARITY_CORPUS_H_

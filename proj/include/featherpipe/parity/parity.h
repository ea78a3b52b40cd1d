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
#ifndef FEATHERPIPE_PARITY_PARITY_H_
#define FEATHERPIPE_PARITY_PARITY_H_

// Differential check of the two backends. A spec is fitted by the batch
// engine, exported, reloaded by the bundle runtime, and both are run over
// the same rows; every cell and every row failure must agree.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "featherpipe/core/error.h"
#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/record_batch.h"
#include "featherpipe/pipeline/spec.h"

namespace featherpipe {

// |a - b| <= 1e-9 * max(1, |a|, |b|); NaN equals NaN; infinities must match.
bool FloatsAgree(double a, double b);
// Exact for discrete leaves, FloatsAgree for floats, recursive over lists.
// On a float disagreement `delta` (optional) receives the largest |a - b|.
bool ValuesAgree(const Value& a, const Value& b, double* delta = nullptr);

struct Mismatch {
  // Global row index; -1 for a schema-level disagreement.
  int64_t row;
  std::string column;
  std::string batch_value;
  std::string bundle_value;
  std::optional<double> delta;
};

struct ParityReport {
  size_t rows = 0;
  size_t total_cells = 0;
  // Rows both backends rejected with the same error code.
  size_t error_rows = 0;
  size_t mismatch_count = 0;
  // The first mismatches, capped by ParityOptions::max_recorded.
  std::vector<Mismatch> mismatches;
  // Set when the spec did not compile or fit; nothing was compared.
  std::optional<Error> fit_error;
  // Describes the corruption applied with ParityOptions::inject_fault.
  std::optional<std::string> fault;
  std::string bundle;

  bool passed() const { return !fit_error && mismatch_count == 0; }
  // One line per recorded mismatch.
  std::string ToText() const;
  Json Summary() const;
};

struct ParityOptions {
  size_t threads = 0;
  // The trailing fraction of rows (in global order) is kept out of the fit
  // but still compared, so unseen categories reach both backends.
  double holdout_fraction = 0.2;
  // Corrupts the exported bundle before loading it (self-test of the
  // harness): the first two labels of the first vocabulary are swapped, or
  // else the first scaler mean / fill value is shifted by 1.
  bool inject_fault = false;
  size_t max_recorded = 100;
};

ParityReport CheckParity(const PipelineSpec& spec,
                         std::span<const RecordBatch> partitions,
                         const ParityOptions& options = {});

// Random partitions over spec.inputs, planting the spec's own mask and
// default tokens and separators so those paths are exercised.
std::vector<RecordBatch> SpecCorpus(const PipelineSpec& spec, size_t rows,
                                    uint64_t seed, size_t partitions = 1);

struct SweepOptions {
  uint64_t seed = 1;
  size_t params_per_op = 20;
  size_t rows = 1000;
  size_t threads = 0;
  // Restrict to these op labels (all SweepOps() when empty).
  std::vector<std::string> ops;
};

struct SweepCase {
  std::string op;
  size_t index;
  std::string spec;
  ParityReport report;
};

struct SweepResult {
  std::vector<SweepCase> cases;
  // Random parameterizations that failed to fit and were redrawn.
  size_t redrawn = 0;
  bool passed() const;
};

SweepResult RunParitySweep(const SweepOptions& options);

}  // namespace featherpipe

#endif  // FEATHERPIPE_PARITY_PARITY_H_

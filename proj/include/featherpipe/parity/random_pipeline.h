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
#ifndef FEATHERPIPE_PARITY_RANDOM_PIPELINE_H_
#define FEATHERPIPE_PARITY_RANDOM_PIPELINE_H_

// Random pipeline specs over the synthetic corpora.

#include <string>
#include <vector>

#include "featherpipe/parity/corpus.h"
#include "featherpipe/pipeline/spec.h"

namespace featherpipe {

// One entry per catalog op; impute contributes two (mean and median).
struct SweepOp {
  std::string label;
  OpKind kind;
};
const std::vector<SweepOp>& SweepOps();

// A pipeline over CorpusSchema(corpus) whose final stage exercises op
// with randomly drawn inputs and parameters. A few ops get a short
// producing prefix (e.g. a disassemble needs a fixed-width list).
PipelineSpec RandomSweepSpec(const SweepOp& op, const CorpusSpec& corpus,
                             Rng& rng);

// A chained pipeline of exactly kLtrStages stages over LtrSchema().
inline constexpr size_t kLtrStages = 60;
PipelineSpec LtrSpec();

}  // namespace featherpipe

#endif  // FEATHERPIPE_PARITY_RANDOM_PIPELINE_H_

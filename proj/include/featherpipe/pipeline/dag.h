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
#ifndef FEATHERPIPE_PIPELINE_DAG_H_
#define FEATHERPIPE_PIPELINE_DAG_H_

#include <cstddef>
#include <vector>

#include "featherpipe/pipeline/spec.h"

namespace featherpipe {

// Stage indices in execution order: every stage follows the producers of
// its inputs, and ready stages run in declaration order. Throws
// Error(kValidation) for a column nobody produces or one produced twice,
// and Error(kCycle) naming a stage on a cycle.
std::vector<size_t> TopoOrder(const PipelineSpec& spec);

}  // namespace featherpipe

#endif  // FEATHERPIPE_PIPELINE_DAG_H_

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
#ifndef FEATHERPIPE_PIPELINE_SPEC_H_
#define FEATHERPIPE_PIPELINE_SPEC_H_

// Pipeline-spec documents:
//
//   {"version": 1,
//    "inputs": [{"name", "dtype", "shape"}, ...],
//    "stages": [{"name", "op", "inputs", "outputs", "params"}, ...]}

#include <string>
#include <string_view>
#include <vector>

#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/value.h"
#include "featherpipe/transforms/catalog.h"

namespace featherpipe {

inline constexpr int64_t kSpecVersion = 1;

struct StageConfig {
  std::string name;
  OpKind op = OpKind::kCast;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Json params = Json::object();
};

struct PipelineSpec {
  Schema inputs;
  std::vector<StageConfig> stages;
};

// Parses and fully validates a spec: structure, unique names, column
// wiring, acyclicity, and every stage's params against its input types.
// Throws Error(kSpecParse) with the byte offset for malformed text, and
// Error(kValidation) / Error(kCycle) / typing errors naming the stage.
PipelineSpec ParseSpec(std::string_view text);
PipelineSpec SpecFromJson(const Json& doc);

Json SpecToJson(const PipelineSpec& spec);
std::string WriteSpec(const PipelineSpec& spec);

}  // namespace featherpipe

#endif  // FEATHERPIPE_PIPELINE_SPEC_H_

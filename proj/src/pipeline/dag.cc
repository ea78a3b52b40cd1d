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
#include "featherpipe/pipeline/dag.h"

#include <functional>
#include <queue>
#include <unordered_map>

#include "featherpipe/core/error.h"

namespace featherpipe {

std::vector<size_t> TopoOrder(const PipelineSpec& spec) {
  const size_t n = spec.stages.size();
  std::unordered_map<std::string, size_t> producer;
  for (size_t i = 0; i < n; ++i) {
    for (const std::string& out : spec.stages[i].outputs) {
      if (spec.inputs.Find(out) != nullptr) {
        throw Error(ErrorCode::kValidation,
                    "output '" + out + "' shadows a pipeline input",
                    {.stage = spec.stages[i].name});
      }
      auto [it, fresh] = producer.emplace(out, i);
      if (!fresh) {
        throw Error(ErrorCode::kValidation,
                    "column '" + out + "' is also produced by stage '" +
                        spec.stages[it->second].name + "'",
                    {.stage = spec.stages[i].name});
      }
    }
  }

  // upstream[i]: stages whose outputs stage i reads.
  std::vector<std::vector<size_t>> downstream(n);
  std::vector<std::vector<size_t>> upstream(n);
  std::vector<size_t> pending(n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (const std::string& in : spec.stages[i].inputs) {
      if (spec.inputs.Find(in) != nullptr) continue;
      auto it = producer.find(in);
      if (it == producer.end()) {
        throw Error(ErrorCode::kValidation,
                    "input column '" + in +
                        "' is neither a pipeline input nor a stage output",
                    {.stage = spec.stages[i].name});
      }
      upstream[i].push_back(it->second);
      downstream[it->second].push_back(i);
      ++pending[i];
    }
  }

  std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
  for (size_t i = 0; i < n; ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (size_t d : downstream[i]) {
      if (--pending[d] == 0) ready.push(d);
    }
  }
  if (order.size() == n) return order;

  // Every unscheduled stage waits on another unscheduled stage, so walking
  // upstream through unscheduled stages must revisit one: that one is on a
  // cycle.
  size_t at = 0;
  while (pending[at] == 0) ++at;
  std::vector<bool> visited(n, false);
  while (!visited[at]) {
    visited[at] = true;
    for (size_t u : upstream[at]) {
      if (pending[u] != 0) {
        at = u;
        break;
      }
    }
  }
  throw Error(ErrorCode::kCycle,
              "stage '" + spec.stages[at].name + "' depends on its own output",
              {.stage = spec.stages[at].name});
}

}  // namespace featherpipe

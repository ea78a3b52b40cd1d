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
#ifndef FEATHERPIPE_PIPELINE_PARALLEL_H_
#define FEATHERPIPE_PIPELINE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace featherpipe {

// Worker count for `threads` == 0.
size_t DefaultThreads();

// Runs fn(0..n-1) on up to `threads` workers (0 = DefaultThreads()). If
// several calls throw, the exception from the smallest index is rethrown
// once all workers finish, so failures are reported deterministically.
void ParallelFor(size_t n, size_t threads,
                 const std::function<void(size_t)>& fn);

}  // namespace featherpipe

#endif  // FEATHERPIPE_PIPELINE_PARALLEL_H_

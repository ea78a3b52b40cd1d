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
#ifndef FEATHERPIPE_CORE_MURMUR3_H_
#define FEATHERPIPE_CORE_MURMUR3_H_

#include <cstdint>
#include <string_view>

namespace featherpipe {

inline constexpr uint32_t kHashSeed = 42;

// MurmurHash3 x86 32-bit over the raw bytes of `data`.
uint32_t Murmur3_32(std::string_view data, uint32_t seed);

// Same hash reinterpreted as a signed 32-bit integer (two's complement).
int32_t Murmur3_32Signed(std::string_view data, uint32_t seed);

// Non-negative remainder of `value` modulo `divisor` (divisor >= 1).
inline int64_t FloorMod(int64_t value, int64_t divisor) {
  const int64_t r = value % divisor;
  return r < 0 ? r + divisor : r;
}

}  // namespace featherpipe

#endif  // FEATHERPIPE_CORE_MURMUR3_H_

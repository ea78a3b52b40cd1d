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
#include "featherpipe/core/murmur3.h"

#include <bit>

namespace featherpipe {
namespace {

constexpr uint32_t kC1 = 0xcc9e2d51;
constexpr uint32_t kC2 = 0x1b873593;

inline uint32_t Mix(uint32_t k) {
  k *= kC1;
  k = std::rotl(k, 15);
  k *= kC2;
  return k;
}

inline uint32_t Finalize(uint32_t h) {
  h ^= h >> 16;
  h *= 0x85ebca6b;
  h ^= h >> 13;
  h *= 0xc2b2ae35;
  h ^= h >> 16;
  return h;
}

}  // namespace

uint32_t Murmur3_32(std::string_view data, uint32_t seed) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  const size_t len = data.size();
  const size_t nblocks = len / 4;
  uint32_t h = seed;

  // Blocks are read little-endian regardless of host byte order.
  for (size_t i = 0; i < nblocks; ++i) {
    const unsigned char* p = bytes + i * 4;
    const uint32_t k = static_cast<uint32_t>(p[0]) |
                       (static_cast<uint32_t>(p[1]) << 8) |
                       (static_cast<uint32_t>(p[2]) << 16) |
                       (static_cast<uint32_t>(p[3]) << 24);
    h ^= Mix(k);
    h = std::rotl(h, 13);
    h = h * 5 + 0xe6546b64;
  }

  const unsigned char* tail = bytes + nblocks * 4;
  uint32_t k = 0;
  switch (len & 3) {
    case 3:
      k ^= static_cast<uint32_t>(tail[2]) << 16;
      [[fallthrough]];
    case 2:
      k ^= static_cast<uint32_t>(tail[1]) << 8;
      [[fallthrough]];
    case 1:
      k ^= tail[0];
      h ^= Mix(k);
  }

  h ^= static_cast<uint32_t>(len);
  return Finalize(h);
}

int32_t Murmur3_32Signed(std::string_view data, uint32_t seed) {
  return std::bit_cast<int32_t>(Murmur3_32(data, seed));
}

}  // namespace featherpipe

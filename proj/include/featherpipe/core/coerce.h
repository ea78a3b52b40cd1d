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
#ifndef FEATHERPIPE_CORE_COERCE_H_
#define FEATHERPIPE_CORE_COERCE_H_

#include <string>

#include "featherpipe/core/value.h"

namespace featherpipe {

// Deterministic text form of a non-null scalar. Both backends hash and index
// this exact string, so it must never change:
//   int64   decimal, no leading zeros
//   bool    "true" / "false"
//   float64 shortest round-trip decimal ("2.5", "3", "1e+20", "nan", "inf")
//   string  unchanged
std::string CanonicalRender(const Value& scalar);

// Shortest round-trip rendering of a double.
std::string RenderDouble(double v);

// Converts every leaf of `value` to `target`, keeping nulls and nesting.
//
//   int64 <-> float64  (float -> int only when integral and in range)
//   bool  -> int64/float64 as 0/1
//   any   -> string via CanonicalRender
//   string -> numeric/bool only when the whole string parses exactly
//
// Throws Error(kCoercion) otherwise.
Value Coerce(const Value& value, DType target);

}  // namespace featherpipe

#endif  // FEATHERPIPE_CORE_COERCE_H_

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
#ifndef FEATHERPIPE_CORE_JSON_CODEC_H_
#define FEATHERPIPE_CORE_JSON_CODEC_H_

#include <string>

#include "featherpipe/core/value.h"
#include "json.hpp"

namespace featherpipe {

using Json = nlohmann::json;

// Compact JSON with object keys in byte order and floats in shortest
// round-trip form. Integral floats keep a ".0" suffix so the number kind
// survives a reparse. Throws Error(kInvalidArgument) on non-finite floats.
std::string WriteCanonicalJson(const Json& doc);

// Non-finite floats become the strings "NaN", "Infinity", "-Infinity".
Json ValueToJson(const Value& value);

// Schema-directed decode. Scalars are coerced to the field dtype; list
// lengths are checked against fixed dims. Throws Error(kRowValidation)
// naming the field on any mismatch.
Value JsonToValue(const Json& doc, const FieldSpec& field);

Json FieldSpecToJson(const FieldSpec& field);
// Throws Error(kValidation) for unknown dtypes or malformed shapes.
FieldSpec FieldSpecFromJson(const Json& doc);

}  // namespace featherpipe

#endif  // FEATHERPIPE_CORE_JSON_CODEC_H_

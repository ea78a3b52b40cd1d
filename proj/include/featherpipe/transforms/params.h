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
#ifndef FEATHERPIPE_TRANSFORMS_PARAMS_H_
#define FEATHERPIPE_TRANSFORMS_PARAMS_H_

#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/value.h"

namespace featherpipe {

// Typed, validating access to a stage's `params` object. Every getter
// records the key it read and writes the effective value (defaults
// included) into canonical(), which is what bundles persist. Errors are
// Error(kValidation) naming the stage and the offending field.
class ParamReader {
 public:
  ParamReader(const Json& params, std::string stage);

  int64_t Int(std::string_view key, std::optional<int64_t> fallback,
              int64_t min_value);
  std::optional<int64_t> OptionalInt(std::string_view key, int64_t min_value);
  double Double(std::string_view key, std::optional<double> fallback);
  std::optional<double> OptionalDouble(std::string_view key);
  bool Bool(std::string_view key, bool fallback);
  std::string String(std::string_view key,
                     std::optional<std::string> fallback);
  std::optional<std::string> OptionalString(std::string_view key);
  std::string Enum(std::string_view key,
                   std::initializer_list<std::string_view> choices,
                   std::optional<std::string> fallback);
  std::optional<DType> OptionalDType(std::string_view key);
  // Raw JSON node; nullptr when absent.
  const Json* Raw(std::string_view key);
  // Records `value` as canonical for an already-read raw key.
  void SetCanonical(std::string_view key, Json value);

  // Throws if `params` holds a key no getter asked for.
  void RejectUnknown() const;

  const std::string& stage() const { return stage_; }
  const Json& canonical() const { return canonical_; }

  [[noreturn]] void Fail(std::string_view key, const std::string& why) const;

 private:
  const Json* Lookup(std::string_view key);

  const Json& params_;
  std::string stage_;
  std::set<std::string, std::less<>> seen_;
  Json canonical_ = Json::object();
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_TRANSFORMS_PARAMS_H_

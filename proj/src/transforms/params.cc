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
#include "featherpipe/transforms/params.h"

#include <cmath>

#include "featherpipe/core/error.h"

namespace featherpipe {

namespace {
const Json& EmptyObject() {
  static const Json kEmpty = Json::object();
  return kEmpty;
}
}  // namespace

ParamReader::ParamReader(const Json& params, std::string stage)
    : params_(params.is_null() ? EmptyObject() : params),
      stage_(std::move(stage)) {
  if (!params_.is_object()) {
    throw Error(ErrorCode::kValidation, "params must be an object",
                {.stage = stage_});
  }
}

void ParamReader::Fail(std::string_view key, const std::string& why) const {
  throw Error(ErrorCode::kValidation,
              "param '" + std::string(key) + "': " + why, {.stage = stage_});
}

const Json* ParamReader::Lookup(std::string_view key) {
  seen_.emplace(key);
  auto it = params_.find(std::string(key));
  if (it == params_.end() || it->is_null()) return nullptr;
  return &*it;
}

const Json* ParamReader::Raw(std::string_view key) { return Lookup(key); }

void ParamReader::SetCanonical(std::string_view key, Json value) {
  canonical_[std::string(key)] = std::move(value);
}

int64_t ParamReader::Int(std::string_view key, std::optional<int64_t> fallback,
                         int64_t min_value) {
  auto v = OptionalInt(key, min_value);
  if (v) return *v;
  if (!fallback) Fail(key, "is required");
  SetCanonical(key, *fallback);
  return *fallback;
}

std::optional<int64_t> ParamReader::OptionalInt(std::string_view key,
                                                int64_t min_value) {
  const Json* node = Lookup(key);
  if (!node) return std::nullopt;
  if (!node->is_number_integer()) Fail(key, "must be an integer");
  const int64_t v = node->get<int64_t>();
  if (v < min_value) Fail(key, "must be >= " + std::to_string(min_value));
  SetCanonical(key, v);
  return v;
}

double ParamReader::Double(std::string_view key,
                           std::optional<double> fallback) {
  auto v = OptionalDouble(key);
  if (v) return *v;
  if (!fallback) Fail(key, "is required");
  SetCanonical(key, *fallback);
  return *fallback;
}

std::optional<double> ParamReader::OptionalDouble(std::string_view key) {
  const Json* node = Lookup(key);
  if (!node) return std::nullopt;
  if (!node->is_number()) Fail(key, "must be a number");
  const double v = node->get<double>();
  if (!std::isfinite(v)) Fail(key, "must be finite");
  SetCanonical(key, v);
  return v;
}

bool ParamReader::Bool(std::string_view key, bool fallback) {
  const Json* node = Lookup(key);
  bool v = fallback;
  if (node) {
    if (!node->is_boolean()) Fail(key, "must be a boolean");
    v = node->get<bool>();
  }
  SetCanonical(key, v);
  return v;
}

std::string ParamReader::String(std::string_view key,
                                std::optional<std::string> fallback) {
  auto v = OptionalString(key);
  if (v) return *v;
  if (!fallback) Fail(key, "is required");
  SetCanonical(key, *fallback);
  return *fallback;
}

std::optional<std::string> ParamReader::OptionalString(std::string_view key) {
  const Json* node = Lookup(key);
  if (!node) return std::nullopt;
  if (!node->is_string()) Fail(key, "must be a string");
  std::string v = node->get<std::string>();
  SetCanonical(key, v);
  return v;
}

std::string ParamReader::Enum(std::string_view key,
                              std::initializer_list<std::string_view> choices,
                              std::optional<std::string> fallback) {
  std::string v = String(key, std::move(fallback));
  for (std::string_view c : choices) {
    if (c == v) return v;
  }
  std::string allowed;
  for (std::string_view c : choices) {
    if (!allowed.empty()) allowed += ", ";
    allowed += c;
  }
  Fail(key, "'" + v + "' is not one of {" + allowed + "}");
}

std::optional<DType> ParamReader::OptionalDType(std::string_view key) {
  auto name = OptionalString(key);
  if (!name) return std::nullopt;
  auto dtype = ParseDType(*name);
  if (!dtype) Fail(key, "unknown dtype '" + *name + "'");
  SetCanonical(key, std::string(DTypeName(*dtype)));
  return dtype;
}

void ParamReader::RejectUnknown() const {
  for (auto it = params_.begin(); it != params_.end(); ++it) {
    if (!seen_.contains(it.key())) Fail(it.key(), "unknown parameter");
  }
}

}  // namespace featherpipe

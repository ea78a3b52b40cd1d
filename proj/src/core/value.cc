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
#include "featherpipe/core/value.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "featherpipe/core/coerce.h"
#include "featherpipe/core/error.h"

namespace featherpipe {

std::string_view DTypeName(DType dtype) {
  switch (dtype) {
    case DType::kInt64:
      return "int64";
    case DType::kFloat64:
      return "float64";
    case DType::kBool:
      return "bool";
    case DType::kString:
      return "string";
  }
  return "unknown";
}

std::optional<DType> ParseDType(std::string_view name) {
  if (name == "int64" || name == "int32" || name == "int16" || name == "int8" ||
      name == "int" || name == "long") {
    return DType::kInt64;
  }
  if (name == "float64" || name == "float32" || name == "double" ||
      name == "float") {
    return DType::kFloat64;
  }
  if (name == "bool" || name == "boolean") return DType::kBool;
  if (name == "string" || name == "str") return DType::kString;
  return std::nullopt;
}

bool ShapeSpec::IsFixed() const {
  return std::all_of(dims.begin(), dims.end(),
                     [](int64_t d) { return d != kVariable; });
}

ShapeSpec ShapeSpec::WithInnerAxis(int64_t length) const {
  ShapeSpec out = *this;
  out.dims.push_back(length);
  return out;
}

ShapeSpec ShapeSpec::WithoutInnerAxis() const {
  ShapeSpec out = *this;
  if (!out.dims.empty()) out.dims.pop_back();
  return out;
}

std::string ShapeSpec::ToString() const {
  if (dims.empty()) return "scalar";
  std::string out = "list";
  for (int64_t d : dims) {
    out += "[" + (d == kVariable ? std::string("?") : std::to_string(d)) + "]";
  }
  return out;
}

std::string FieldSpec::ToString() const {
  return name + ":" + std::string(DTypeName(dtype)) + ":" + shape.ToString();
}

DType Value::scalar_dtype() const {
  switch (payload_.index()) {
    case 1:
      return DType::kInt64;
    case 2:
      return DType::kFloat64;
    case 3:
      return DType::kBool;
    case 4:
      return DType::kString;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  "scalar_dtype() called on a non-scalar value");
  }
}

int Value::Depth() const {
  if (!is_list()) return 0;
  int inner = 0;
  for (const Value& item : AsList()) inner = std::max(inner, item.Depth());
  return 1 + inner;
}

bool Value::IdenticalTo(const Value& other) const {
  if (payload_.index() != other.payload_.index()) return false;
  if (is_float()) {
    const double a = AsFloat();
    const double b = other.AsFloat();
    if (std::isnan(a) && std::isnan(b)) return true;
    return std::bit_cast<uint64_t>(a) == std::bit_cast<uint64_t>(b);
  }
  if (is_list()) {
    const List& a = AsList();
    const List& b = other.AsList();
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i].IdenticalTo(b[i])) return false;
    }
    return true;
  }
  return payload_ == other.payload_;
}

std::string Value::DebugString() const {
  if (is_null()) return "null";
  if (is_string()) return "\"" + AsString() + "\"";
  if (is_list()) {
    std::string out = "[";
    const List& items = AsList();
    for (size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += ",";
      out += items[i].DebugString();
    }
    return out + "]";
  }
  return CanonicalRender(*this);
}

namespace {

std::optional<std::string> CheckLevel(const Value& value,
                                      const FieldSpec& field, int level) {
  if (value.is_null()) return std::nullopt;
  if (level == field.shape.rank()) {
    if (!value.is_scalar()) {
      return "expected a " + std::string(DTypeName(field.dtype)) +
             " scalar at depth " + std::to_string(level) + ", got " +
             value.DebugString();
    }
    if (value.scalar_dtype() != field.dtype) {
      return "expected dtype " + std::string(DTypeName(field.dtype)) +
             ", got " + std::string(DTypeName(value.scalar_dtype()));
    }
    return std::nullopt;
  }
  if (!value.is_list()) {
    return "expected a list at depth " + std::to_string(level) + " for shape " +
           field.shape.ToString() + ", got " + value.DebugString();
  }
  const int64_t dim = field.shape.dims[level];
  const auto& items = value.AsList();
  if (dim != ShapeSpec::kVariable && static_cast<int64_t>(items.size()) != dim) {
    return "expected length " + std::to_string(dim) + " at depth " +
           std::to_string(level) + ", got " + std::to_string(items.size());
  }
  for (const Value& item : items) {
    if (auto why = CheckLevel(item, field, level + 1)) return why;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> CheckConforms(const Value& value,
                                         const FieldSpec& field) {
  return CheckLevel(value, field, 0);
}

bool IsValidFieldName(std::string_view name) {
  return !name.empty() && name.find('/') == std::string_view::npos;
}

Schema::Schema(std::vector<FieldSpec> fields) {
  for (auto& f : fields) Add(std::move(f));
}

void Schema::Add(FieldSpec field) {
  if (!IsValidFieldName(field.name)) {
    throw Error(ErrorCode::kValidation,
                "invalid field name '" + field.name +
                    "' (must be non-empty and must not contain '/')");
  }
  if (field.shape.rank() > 2) {
    throw Error(ErrorCode::kValidation,
                "field '" + field.name + "' nests deeper than 2");
  }
  if (index_.contains(field.name)) {
    throw Error(ErrorCode::kValidation, "duplicate field '" + field.name + "'");
  }
  index_.emplace(field.name, fields_.size());
  fields_.push_back(std::move(field));
}

const FieldSpec* Schema::Find(std::string_view name) const {
  auto idx = IndexOf(name);
  return idx ? &fields_[*idx] : nullptr;
}

std::optional<size_t> Schema::IndexOf(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace featherpipe

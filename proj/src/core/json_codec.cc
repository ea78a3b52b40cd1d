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
#include "featherpipe/core/json_codec.h"

#include <cmath>
#include <limits>

#include "featherpipe/core/coerce.h"
#include "featherpipe/core/error.h"

namespace featherpipe {
namespace {

void AppendString(const std::string& s, std::string* out) {
  try {
    *out += Json(s).dump();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("string is not valid UTF-8: ") + e.what());
  }
}

void AppendFloat(double v, std::string* out) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument,
                "non-finite float cannot be written as a JSON number");
  }
  std::string text = RenderDouble(v);
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  *out += text;
}

void Write(const Json& doc, std::string* out) {
  switch (doc.type()) {
    case Json::value_t::null:
      *out += "null";
      return;
    case Json::value_t::boolean:
      *out += doc.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      *out += std::to_string(doc.get<int64_t>());
      return;
    case Json::value_t::number_unsigned:
      *out += std::to_string(doc.get<uint64_t>());
      return;
    case Json::value_t::number_float:
      AppendFloat(doc.get<double>(), out);
      return;
    case Json::value_t::string:
      AppendString(doc.get_ref<const std::string&>(), out);
      return;
    case Json::value_t::array: {
      *out += '[';
      bool first = true;
      for (const Json& item : doc) {
        if (!first) *out += ',';
        first = false;
        Write(item, out);
      }
      *out += ']';
      return;
    }
    case Json::value_t::object: {
      // nlohmann::json objects are std::map-backed, so iteration is already
      // in byte order of the keys.
      *out += '{';
      bool first = true;
      for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!first) *out += ',';
        first = false;
        AppendString(it.key(), out);
        *out += ':';
        Write(it.value(), out);
      }
      *out += '}';
      return;
    }
    case Json::value_t::binary:
    case Json::value_t::discarded:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "unsupported JSON node");
}

[[noreturn]] void Reject(const FieldSpec& field, const std::string& why) {
  throw Error(ErrorCode::kRowValidation, why, {.column = field.name});
}

Value DecodeScalar(const Json& doc, const FieldSpec& field) {
  Value raw;
  switch (doc.type()) {
    case Json::value_t::boolean:
      raw = Value::Bool(doc.get<bool>());
      break;
    case Json::value_t::number_integer:
      raw = Value::Int(doc.get<int64_t>());
      break;
    case Json::value_t::number_unsigned: {
      const uint64_t u = doc.get<uint64_t>();
      if (u > static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
        Reject(field, "integer out of int64 range");
      }
      raw = Value::Int(static_cast<int64_t>(u));
      break;
    }
    case Json::value_t::number_float:
      raw = Value::Float(doc.get<double>());
      break;
    case Json::value_t::string: {
      const auto& s = doc.get_ref<const std::string&>();
      if (field.dtype == DType::kFloat64) {
        if (s == "NaN") return Value::Float(std::numeric_limits<double>::quiet_NaN());
        if (s == "Infinity") return Value::Float(std::numeric_limits<double>::infinity());
        if (s == "-Infinity") return Value::Float(-std::numeric_limits<double>::infinity());
      }
      raw = Value::String(s);
      break;
    }
    default:
      Reject(field, "expected a scalar, got " + doc.dump());
  }
  try {
    return Coerce(raw, field.dtype);
  } catch (const Error& e) {
    Reject(field, e.detail());
  }
}

Value Decode(const Json& doc, const FieldSpec& field, int level) {
  if (doc.is_null()) return Value::Null();
  if (level == field.shape.rank()) return DecodeScalar(doc, field);
  if (!doc.is_array()) {
    Reject(field, "expected a list for shape " + field.shape.ToString() +
                      ", got " + doc.dump());
  }
  const int64_t dim = field.shape.dims[level];
  if (dim != ShapeSpec::kVariable && static_cast<int64_t>(doc.size()) != dim) {
    Reject(field, "expected length " + std::to_string(dim) + ", got " +
                      std::to_string(doc.size()));
  }
  Value::List items;
  items.reserve(doc.size());
  for (const Json& item : doc) items.push_back(Decode(item, field, level + 1));
  return Value::MakeList(std::move(items));
}

}  // namespace

std::string WriteCanonicalJson(const Json& doc) {
  std::string out;
  Write(doc, &out);
  return out;
}

Json ValueToJson(const Value& value) {
  if (value.is_null()) return nullptr;
  if (value.is_list()) {
    Json arr = Json::array();
    for (const Value& item : value.AsList()) arr.push_back(ValueToJson(item));
    return arr;
  }
  switch (value.scalar_dtype()) {
    case DType::kInt64:
      return value.AsInt();
    case DType::kFloat64: {
      const double d = value.AsFloat();
      if (std::isnan(d)) return "NaN";
      if (std::isinf(d)) return d > 0 ? "Infinity" : "-Infinity";
      return d;
    }
    case DType::kBool:
      return value.AsBool();
    case DType::kString:
      return value.AsString();
  }
  return nullptr;
}

Value JsonToValue(const Json& doc, const FieldSpec& field) {
  return Decode(doc, field, 0);
}

Json FieldSpecToJson(const FieldSpec& field) {
  Json dims = Json::array();
  for (int64_t d : field.shape.dims) dims.push_back(d);
  return Json{{"name", field.name},
              {"dtype", std::string(DTypeName(field.dtype))},
              {"shape", dims}};
}

FieldSpec FieldSpecFromJson(const Json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kValidation, "field spec must be an object");
  }
  FieldSpec field;
  if (!doc.contains("name") || !doc["name"].is_string()) {
    throw Error(ErrorCode::kValidation, "field spec needs a string 'name'");
  }
  field.name = doc["name"].get<std::string>();
  if (!doc.contains("dtype") || !doc["dtype"].is_string()) {
    throw Error(ErrorCode::kValidation,
                "field '" + field.name + "' needs a string 'dtype'");
  }
  auto dtype = ParseDType(doc["dtype"].get<std::string>());
  if (!dtype) {
    throw Error(ErrorCode::kValidation,
                "field '" + field.name + "' has unknown dtype '" +
                    doc["dtype"].get<std::string>() + "'");
  }
  field.dtype = *dtype;
  if (doc.contains("shape")) {
    const Json& shape = doc["shape"];
    if (!shape.is_array() || shape.size() > 2) {
      throw Error(ErrorCode::kValidation,
                  "field '" + field.name + "' shape must be a list of <= 2 dims");
    }
    for (const Json& d : shape) {
      if (!d.is_number_integer() || d.get<int64_t>() < 1) {
        throw Error(ErrorCode::kValidation,
                    "field '" + field.name + "' dims must be positive integers");
      }
      field.shape.dims.push_back(d.get<int64_t>());
    }
  }
  return field;
}

}  // namespace featherpipe

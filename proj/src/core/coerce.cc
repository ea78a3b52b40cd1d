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
#include "featherpipe/core/coerce.h"

#include <charconv>
#include <cmath>
#include <system_error>

#include "featherpipe/core/error.h"

namespace featherpipe {
namespace {

// 2^63 as a double; every double in [-2^63, 2^63) fits in int64.
constexpr double kTwoPow63 = 9223372036854775808.0;

Value CoercionFailure(const Value& v, DType target) {
  throw Error(ErrorCode::kCoercion, "cannot coerce " + v.DebugString() +
                                        " to " + std::string(DTypeName(target)));
}

Value FloatToInt(const Value& v) {
  const double d = v.AsFloat();
  if (!std::isfinite(d) || std::trunc(d) != d || d < -kTwoPow63 ||
      d >= kTwoPow63) {
    return CoercionFailure(v, DType::kInt64);
  }
  return Value::Int(static_cast<int64_t>(d));
}

Value ParseString(const Value& v, DType target) {
  const std::string& s = v.AsString();
  const char* first = s.data();
  const char* last = s.data() + s.size();
  switch (target) {
    case DType::kInt64: {
      int64_t out = 0;
      auto [ptr, ec] = std::from_chars(first, last, out);
      if (s.empty() || ec != std::errc() || ptr != last) {
        return CoercionFailure(v, target);
      }
      return Value::Int(out);
    }
    case DType::kFloat64: {
      double out = 0;
      auto [ptr, ec] = std::from_chars(first, last, out);
      if (s.empty() || ec != std::errc() || ptr != last) {
        return CoercionFailure(v, target);
      }
      return Value::Float(out);
    }
    case DType::kBool:
      if (s == "true") return Value::Bool(true);
      if (s == "false") return Value::Bool(false);
      return CoercionFailure(v, target);
    case DType::kString:
      return v;
  }
  return CoercionFailure(v, target);
}

Value CoerceScalar(const Value& v, DType target) {
  const DType from = v.scalar_dtype();
  if (from == target) return v;
  if (target == DType::kString) return Value::String(CanonicalRender(v));
  switch (from) {
    case DType::kInt64:
      if (target == DType::kFloat64) {
        return Value::Float(static_cast<double>(v.AsInt()));
      }
      break;
    case DType::kFloat64:
      if (target == DType::kInt64) return FloatToInt(v);
      break;
    case DType::kBool:
      if (target == DType::kInt64) return Value::Int(v.AsBool() ? 1 : 0);
      if (target == DType::kFloat64) return Value::Float(v.AsBool() ? 1.0 : 0.0);
      break;
    case DType::kString:
      return ParseString(v, target);
  }
  return CoercionFailure(v, target);
}

}  // namespace

std::string RenderDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string CanonicalRender(const Value& scalar) {
  switch (scalar.scalar_dtype()) {
    case DType::kInt64:
      return std::to_string(scalar.AsInt());
    case DType::kFloat64:
      return RenderDouble(scalar.AsFloat());
    case DType::kBool:
      return scalar.AsBool() ? "true" : "false";
    case DType::kString:
      return scalar.AsString();
  }
  return {};
}

Value Coerce(const Value& value, DType target) {
  if (value.is_null()) return value;
  if (value.is_list()) {
    Value::List out;
    out.reserve(value.AsList().size());
    for (const Value& item : value.AsList()) out.push_back(Coerce(item, target));
    return Value::MakeList(std::move(out));
  }
  return CoerceScalar(value, target);
}

}  // namespace featherpipe

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
#ifndef FEATHERPIPE_CORE_VALUE_H_
#define FEATHERPIPE_CORE_VALUE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace featherpipe {

enum class DType { kInt64, kFloat64, kBool, kString };

std::string_view DTypeName(DType dtype);

// Accepts the canonical names plus the narrower aliases used by upstream
// schemas ("int32", "float32", ...), which are widened to 64 bits.
std::optional<DType> ParseDType(std::string_view name);

// Shape of one cell. Rank 0 is a scalar, rank 1 a list, rank 2 a list of
// lists. A dim of kVariable is only legal on intermediate columns.
struct ShapeSpec {
  static constexpr int64_t kVariable = -1;

  std::vector<int64_t> dims;

  static ShapeSpec Scalar() { return {}; }
  static ShapeSpec List(int64_t length) { return {{length}}; }
  static ShapeSpec Nested(int64_t outer, int64_t inner) {
    return {{outer, inner}};
  }

  int rank() const { return static_cast<int>(dims.size()); }
  bool IsFixed() const;
  // Appends a trailing axis; used by ops that expand each leaf to a vector.
  ShapeSpec WithInnerAxis(int64_t length) const;
  // Drops the innermost axis; used by sequence-level reductions.
  ShapeSpec WithoutInnerAxis() const;
  std::string ToString() const;

  friend bool operator==(const ShapeSpec&, const ShapeSpec&) = default;
};

struct FieldSpec {
  std::string name;
  DType dtype = DType::kString;
  ShapeSpec shape;

  std::string ToString() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// A nullable cell: a scalar leaf or a list of cells, nested at most twice.
class Value {
 public:
  using List = std::vector<Value>;

  Value() = default;

  static Value Null() { return Value(); }
  static Value Int(int64_t v) { return Value(Payload(std::in_place_index<1>, v)); }
  static Value Float(double v) { return Value(Payload(std::in_place_index<2>, v)); }
  static Value Bool(bool v) { return Value(Payload(std::in_place_index<3>, v)); }
  static Value String(std::string v) {
    return Value(Payload(std::in_place_index<4>, std::move(v)));
  }
  static Value MakeList(List items) {
    return Value(Payload(std::in_place_index<5>, std::move(items)));
  }

  bool is_null() const { return payload_.index() == 0; }
  bool is_list() const { return payload_.index() == 5; }
  bool is_scalar() const { return !is_null() && !is_list(); }
  bool is_int() const { return payload_.index() == 1; }
  bool is_float() const { return payload_.index() == 2; }
  bool is_bool() const { return payload_.index() == 3; }
  bool is_string() const { return payload_.index() == 4; }

  // Precondition: is_scalar().
  DType scalar_dtype() const;

  int64_t AsInt() const { return std::get<1>(payload_); }
  double AsFloat() const { return std::get<2>(payload_); }
  bool AsBool() const { return std::get<3>(payload_); }
  const std::string& AsString() const { return std::get<4>(payload_); }
  const List& AsList() const { return std::get<5>(payload_); }
  List& MutableList() { return std::get<5>(payload_); }

  // Nesting depth of the first non-null path (0 for scalars and null).
  int Depth() const;

  // Structural equality; floats compare with ==, so NaN != NaN.
  friend bool operator==(const Value& a, const Value& b) {
    return a.payload_ == b.payload_;
  }

  // Structural equality where NaNs compare equal and signed zeros are
  // distinguished: "same bits up to NaN payload".
  bool IdenticalTo(const Value& other) const;

  std::string DebugString() const;

 private:
  using Payload =
      std::variant<std::monostate, int64_t, double, bool, std::string, List>;
  explicit Value(Payload p) : payload_(std::move(p)) {}

  Payload payload_;
};

// Returns an explanation when `value` does not fit `field`, std::nullopt
// when it does. Nulls are accepted at every nesting level.
std::optional<std::string> CheckConforms(const Value& value,
                                         const FieldSpec& field);

class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<FieldSpec> fields);

  // Throws Error(kValidation) on a duplicate or malformed name.
  void Add(FieldSpec field);

  const std::vector<FieldSpec>& fields() const { return fields_; }
  size_t size() const { return fields_.size(); }
  const FieldSpec* Find(std::string_view name) const;
  std::optional<size_t> IndexOf(std::string_view name) const;

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.fields_ == b.fields_;
  }

 private:
  std::vector<FieldSpec> fields_;
  std::unordered_map<std::string, size_t> index_;
};

// Names must be non-empty and must not contain '/'.
bool IsValidFieldName(std::string_view name);

}  // namespace featherpipe

#endif  // FEATHERPIPE_CORE_VALUE_H_

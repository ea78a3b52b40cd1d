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
#include "featherpipe/transforms/transform.h"

#include <cmath>
#include <limits>
#include <regex>

#include "featherpipe/core/coerce.h"
#include "featherpipe/core/error.h"
#include "featherpipe/transforms/kernels.h"
#include "featherpipe/transforms/lifting.h"
#include "featherpipe/transforms/params.h"

namespace featherpipe {

class TransformKernel {
 public:
  virtual ~TransformKernel() = default;
  virtual std::vector<Value> Apply(std::span<const Value> in) const = 0;
};

InputAdapter::InputAdapter(std::span<const FieldSpec> declared,
                           std::span<const FieldSpec> effective) {
  for (size_t i = 0; i < declared.size(); ++i) {
    names_.push_back(declared[i].name);
    if (declared[i].dtype != effective[i].dtype) {
      targets_.push_back(effective[i].dtype);
      identity_ = false;
    } else {
      targets_.push_back(std::nullopt);
    }
  }
}

Value InputAdapter::Adapt(size_t index, const Value& value) const {
  if (index >= targets_.size() || !targets_[index]) return value;
  try {
    return Coerce(value, *targets_[index]);
  } catch (const Error& e) {
    throw e.WithContext({.column = names_[index]});
  }
}

std::vector<Value> InputAdapter::AdaptAll(std::span<const Value> values) const {
  std::vector<Value> out;
  out.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) out.push_back(Adapt(i, values[i]));
  return out;
}

std::vector<FieldSpec> WithInputDtype(std::span<const FieldSpec> fields,
                                      std::optional<DType> dtype) {
  std::vector<FieldSpec> out(fields.begin(), fields.end());
  if (dtype) {
    for (auto& f : out) f.dtype = *dtype;
  }
  return out;
}

void RequireString(FieldSpec& field) { field.dtype = DType::kString; }

void RequireFloat(FieldSpec& field, const std::string& stage) {
  if (field.dtype == DType::kString) {
    throw Error(ErrorCode::kDTypeMismatch,
                "input '" + field.name +
                    "' is a string; numeric ops need inputDtype to parse it",
                {.stage = stage});
  }
  field.dtype = DType::kFloat64;
}

namespace {

struct Build {
  OpKind kind;
  const std::string& stage;
  ParamReader& params;
  std::vector<FieldSpec>& inputs;
  std::span<const std::string> outputs;
  std::vector<FieldSpec> out_fields;

  [[noreturn]] void Fail(ErrorCode code, const std::string& why) const {
    throw Error(code, why, {.stage = stage});
  }

  void ExpectInputs(size_t lo, size_t hi) const {
    if (inputs.size() < lo || inputs.size() > hi) {
      std::string want = lo == hi ? std::to_string(lo)
                                  : std::to_string(lo) + ".." +
                                        (hi == SIZE_MAX ? std::string("n")
                                                        : std::to_string(hi));
      Fail(ErrorCode::kValidation,
           std::string(OpKindName(kind)) + " expects " + want +
               " input column(s), got " + std::to_string(inputs.size()));
    }
  }

  void ExpectOutputs(size_t n) const {
    if (outputs.size() != n) {
      Fail(ErrorCode::kValidation,
           std::string(OpKindName(kind)) + " expects " + std::to_string(n) +
               " output column(s), got " + std::to_string(outputs.size()));
    }
  }

  void MaxRank(size_t input, int rank) const {
    if (inputs[input].shape.rank() > rank) {
      Fail(ErrorCode::kShapeMismatch,
           "input '" + inputs[input].name + "' has shape " +
               inputs[input].shape.ToString() + "; at most rank " +
               std::to_string(rank) + " is supported here");
    }
  }

  void Output(DType dtype, ShapeSpec shape) {
    out_fields.push_back({outputs[out_fields.size()], dtype, std::move(shape)});
  }

  // Equal shapes, or scalars broadcast over one common list shape.
  ShapeSpec Broadcast(std::span<const size_t> which) const {
    ShapeSpec common;
    bool have = false;
    for (size_t i : which) {
      const ShapeSpec& s = inputs[i].shape;
      if (s.rank() == 0) continue;
      if (!have) {
        common = s;
        have = true;
        continue;
      }
      // A variable dim (known only after fitting) matches anything.
      bool same = s.rank() == common.rank();
      for (size_t d = 0; same && d < s.dims.size(); ++d) {
        if (common.dims[d] == ShapeSpec::kVariable) {
          common.dims[d] = s.dims[d];
        } else if (s.dims[d] != ShapeSpec::kVariable &&
                   s.dims[d] != common.dims[d]) {
          same = false;
        }
      }
      if (!same) {
        Fail(ErrorCode::kShapeMismatch,
             "operand shapes " + common.ToString() + " and " + s.ToString() +
                 " differ (only scalars broadcast)");
      }
    }
    return common;
  }

  ShapeSpec BroadcastAll() const {
    std::vector<size_t> all(inputs.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return Broadcast(all);
  }
};

// Strict JSON-to-scalar for op constants.
Value ConstantOfType(const Json& node, DType dtype, const Build& b,
                     std::string_view key) {
  bool ok = false;
  Value v;
  switch (dtype) {
    case DType::kInt64:
      ok = node.is_number_integer();
      if (ok) v = Value::Int(node.get<int64_t>());
      break;
    case DType::kFloat64:
      ok = node.is_number() && std::isfinite(node.get<double>());
      if (ok) v = Value::Float(node.get<double>());
      break;
    case DType::kBool:
      ok = node.is_boolean();
      if (ok) v = Value::Bool(node.get<bool>());
      break;
    case DType::kString:
      ok = node.is_string();
      if (ok) v = Value::String(node.get<std::string>());
      break;
  }
  if (!ok) {
    b.Fail(ErrorCode::kDTypeMismatch,
           "param '" + std::string(key) + "' = " + node.dump() +
               " does not match dtype " + std::string(DTypeName(dtype)));
  }
  return v;
}

std::optional<DType> DTypeOfConstant(const Json& node) {
  if (node.is_number_integer()) return DType::kInt64;
  if (node.is_number_float()) return DType::kFloat64;
  if (node.is_boolean()) return DType::kBool;
  if (node.is_string()) return DType::kString;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

class HashIndexKernel : public TransformKernel {
 public:
  explicit HashIndexKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    num_bins_ = b.params.Int("numBins", std::nullopt, 1);
    mask_ = b.params.OptionalString("maskToken");
    RequireString(b.inputs[0]);
    b.Output(DType::kInt64, b.inputs[0].shape);
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftUnary(in[0], [&](const Value& leaf) {
      const std::string& s = leaf.AsString();
      if (mask_ && s == *mask_) return Value::Int(0);
      return Value::Int(kernels::HashBucket(s, num_bins_));
    })};
  }

 private:
  int64_t num_bins_;
  std::optional<std::string> mask_;
};

class BloomEncodeKernel : public TransformKernel {
 public:
  explicit BloomEncodeKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    b.MaxRank(0, 1);
    num_bins_ = b.params.Int("numBins", std::nullopt, 1);
    num_hashes_ = b.params.Int("numHashes", std::nullopt, 1);
    RequireString(b.inputs[0]);
    b.Output(DType::kInt64, b.inputs[0].shape.WithInnerAxis(num_hashes_));
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftUnary(in[0], [&](const Value& leaf) {
      Value::List out;
      for (int64_t idx :
           kernels::BloomBuckets(leaf.AsString(), num_bins_, num_hashes_)) {
        out.push_back(Value::Int(idx));
      }
      return Value::MakeList(std::move(out));
    })};
  }

 private:
  int64_t num_bins_;
  int64_t num_hashes_;
};

class LogTransformKernel : public TransformKernel {
 public:
  explicit LogTransformKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    alpha_ = b.params.Double("alpha", 0.0);
    RequireFloat(b.inputs[0], b.stage);
    b.Output(DType::kFloat64, b.inputs[0].shape);
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftUnary(in[0], [&](const Value& leaf) {
      return Value::Float(kernels::LogPlus(leaf.AsFloat(), alpha_));
    })};
  }

 private:
  double alpha_;
};

class ArithmeticKernel : public TransformKernel {
 public:
  explicit ArithmeticKernel(Build& b) {
    b.ExpectInputs(1, 2);
    b.ExpectOutputs(1);
    const std::string kind = b.params.Enum(
        "kind", {"add", "sub", "mul", "div", "pow", "min", "max"}, std::nullopt);
    kind_ = *kernels::ParseArithmeticKind(kind);
    if (b.inputs.size() == 1) {
      constant_ = b.params.Double("constant", std::nullopt);
    } else if (b.params.Raw("constant") != nullptr) {
      b.params.Fail("constant", "not allowed with two input columns");
    }
    for (auto& f : b.inputs) RequireFloat(f, b.stage);
    b.Output(DType::kFloat64, b.BroadcastAll());
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    std::vector<Value> args(in.begin(), in.end());
    if (constant_) args.push_back(Value::Float(*constant_));
    return {LiftNary(args, [&](std::span<const Value* const> leaves) {
      return Value::Float(kernels::Arithmetic(leaves[0]->AsFloat(),
                                              leaves[1]->AsFloat(), kind_));
    })};
  }

 private:
  kernels::ArithmeticKind kind_;
  std::optional<double> constant_;
};

class StringToListKernel : public TransformKernel {
 public:
  explicit StringToListKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    b.MaxRank(0, 1);
    separator_ = b.params.String("separator", std::nullopt);
    if (separator_.empty()) b.params.Fail("separator", "must be non-empty");
    length_ = b.params.Int("listLength", std::nullopt, 1);
    fill_ = b.params.String("defaultValue", std::string());
    RequireString(b.inputs[0]);
    b.Output(DType::kString, b.inputs[0].shape.WithInnerAxis(length_));
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftUnary(in[0], [&](const Value& leaf) {
      Value::List out;
      for (auto& part :
           kernels::SplitPadded(leaf.AsString(), separator_, length_, fill_)) {
        out.push_back(Value::String(std::move(part)));
      }
      return Value::MakeList(std::move(out));
    })};
  }

 private:
  std::string separator_;
  int64_t length_;
  std::string fill_;
};

class RegexExtractKernel : public TransformKernel {
 public:
  explicit RegexExtractKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    const std::string pattern = b.params.String("pattern", std::nullopt);
    try {
      regex_ = std::regex(pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      b.Fail(ErrorCode::kInvalidPattern,
             "pattern '" + pattern + "' does not compile: " + e.what());
    }
    group_ = b.params.Int("groupIndex", 0, 0);
    fill_ = b.params.String("defaultValue", std::string());
    RequireString(b.inputs[0]);
    b.Output(DType::kString, b.inputs[0].shape);
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftUnary(in[0], [&](const Value& leaf) {
      return Value::String(
          kernels::RegexExtract(leaf.AsString(), regex_, group_, fill_));
    })};
  }

 private:
  std::regex regex_;
  int64_t group_;
  std::string fill_;
};

class StringCaseKernel : public TransformKernel {
 public:
  explicit StringCaseKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    upper_ = b.params.Enum("kind", {"upper", "lower"}, std::nullopt) == "upper";
    RequireString(b.inputs[0]);
    b.Output(DType::kString, b.inputs[0].shape);
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftUnary(in[0], [&](const Value& leaf) {
      return Value::String(upper_ ? kernels::ToUpper(leaf.AsString())
                                  : kernels::ToLower(leaf.AsString()));
    })};
  }

 private:
  bool upper_;
};

class StringConcatKernel : public TransformKernel {
 public:
  explicit StringConcatKernel(Build& b) {
    b.ExpectInputs(1, SIZE_MAX);
    b.ExpectOutputs(1);
    separator_ = b.params.String("separator", std::string());
    Json canonical = Json::array();
    if (const Json* parts = b.params.Raw("parts")) {
      if (!parts->is_array() || parts->empty()) {
        b.params.Fail("parts", "must be a non-empty list");
      }
      for (const Json& p : *parts) {
        if (p.is_object() && p.size() == 1 && p.contains("input") &&
            p["input"].is_number_integer()) {
          const int64_t idx = p["input"].get<int64_t>();
          if (idx < 0 || idx >= static_cast<int64_t>(b.inputs.size())) {
            b.params.Fail("parts", "input index " + std::to_string(idx) +
                                       " out of range");
          }
          parts_.push_back(Part{static_cast<int>(idx), {}});
          canonical.push_back(Json{{"input", idx}});
        } else if (p.is_object() && p.size() == 1 && p.contains("value") &&
                   p["value"].is_string()) {
          parts_.push_back(Part{-1, p["value"].get<std::string>()});
          canonical.push_back(Json{{"value", parts_.back().literal}});
        } else {
          b.params.Fail("parts",
                        "entries must be {\"input\": i} or {\"value\": s}");
        }
      }
    } else {
      for (size_t i = 0; i < b.inputs.size(); ++i) {
        parts_.push_back(Part{static_cast<int>(i), {}});
        canonical.push_back(Json{{"input", static_cast<int64_t>(i)}});
      }
    }
    b.params.SetCanonical("parts", canonical);
    for (auto& f : b.inputs) RequireString(f);
    b.Output(DType::kString, b.BroadcastAll());
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftNary(in, [&](std::span<const Value* const> leaves) {
      std::string out;
      for (size_t i = 0; i < parts_.size(); ++i) {
        if (i > 0) out += separator_;
        const Part& p = parts_[i];
        out += p.input >= 0 ? leaves[static_cast<size_t>(p.input)]->AsString()
                            : p.literal;
      }
      return Value::String(std::move(out));
    })};
  }

 private:
  struct Part {
    int input;  // -1 for a literal
    std::string literal;
  };
  std::string separator_;
  std::vector<Part> parts_;
};

class DateDecomposeKernel : public TransformKernel {
 public:
  explicit DateDecomposeKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    part_ = *kernels::ParseDatePart(b.params.Enum(
        "part", {"year", "month", "dayOfMonth", "weekday", "dayOfYear"},
        std::nullopt));
    RequireString(b.inputs[0]);
    b.Output(DType::kInt64, b.inputs[0].shape);
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftUnary(in[0], [&](const Value& leaf) {
      return Value::Int(kernels::DecomposeDate(leaf.AsString(), part_));
    })};
  }

 private:
  kernels::DatePart part_;
};

class DateDiffKernel : public TransformKernel {
 public:
  explicit DateDiffKernel(Build& b) {
    b.ExpectInputs(2, 2);
    b.ExpectOutputs(1);
    for (auto& f : b.inputs) RequireString(f);
    b.Output(DType::kInt64, b.BroadcastAll());
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftNary(in, [](std::span<const Value* const> leaves) {
      return Value::Int(kernels::DateDiffDays(leaves[0]->AsString(),
                                              leaves[1]->AsString()));
    })};
  }
};

class HaversineKernel : public TransformKernel {
 public:
  explicit HaversineKernel(Build& b) {
    b.ExpectInputs(4, 4);
    b.ExpectOutputs(1);
    for (auto& f : b.inputs) RequireFloat(f, b.stage);
    b.Output(DType::kFloat64, b.BroadcastAll());
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftNary(in, [](std::span<const Value* const> l) {
      return Value::Float(kernels::HaversineKm(
          l[0]->AsFloat(), l[1]->AsFloat(), l[2]->AsFloat(), l[3]->AsFloat()));
    })};
  }
};

class LogicalKernel : public TransformKernel {
 public:
  explicit LogicalKernel(Build& b) {
    kind_ = b.params.Enum("kind", {"and", "or", "not", "xor"}, std::nullopt);
    b.ExpectInputs(kind_ == "not" ? 1 : 2, kind_ == "not" ? 1 : 2);
    b.ExpectOutputs(1);
    for (const auto& f : b.inputs) {
      if (f.dtype != DType::kBool) {
        b.Fail(ErrorCode::kDTypeMismatch,
               "logical input '" + f.name + "' has dtype " +
                   std::string(DTypeName(f.dtype)) + ", expected bool");
      }
    }
    b.Output(DType::kBool, b.BroadcastAll());
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {LiftNary(in, [&](std::span<const Value* const> l) {
      const bool a = l[0]->AsBool();
      if (kind_ == "not") return Value::Bool(!a);
      const bool c = l[1]->AsBool();
      if (kind_ == "and") return Value::Bool(a && c);
      if (kind_ == "or") return Value::Bool(a || c);
      return Value::Bool(a != c);
    })};
  }

 private:
  std::string kind_;
};

template <typename T>
bool Ordered(const T& a, const T& b, std::string_view kind) {
  if (kind == "eq") return a == b;
  if (kind == "ne") return a != b;
  if (kind == "lt") return a < b;
  if (kind == "le") return a <= b;
  if (kind == "gt") return a > b;
  return a >= b;
}

class CompareKernel : public TransformKernel {
 public:
  explicit CompareKernel(Build& b) {
    kind_ = b.params.Enum("kind", {"eq", "ne", "lt", "le", "gt", "ge"},
                          std::nullopt);
    b.ExpectInputs(1, 2);
    b.ExpectOutputs(1);
    const DType dtype = b.inputs[0].dtype;
    if (b.inputs.size() == 2) {
      if (b.inputs[1].dtype != dtype) {
        b.Fail(ErrorCode::kDTypeMismatch,
               "cannot compare " + std::string(DTypeName(dtype)) + " with " +
                   std::string(DTypeName(b.inputs[1].dtype)));
      }
      if (b.params.Raw("value") != nullptr) {
        b.params.Fail("value", "not allowed with two input columns");
      }
    } else {
      const Json* node = b.params.Raw("value");
      if (node == nullptr) b.params.Fail("value", "is required with one input");
      constant_ = ConstantOfType(*node, dtype, b, "value");
      b.params.SetCanonical("value", ValueToJson(*constant_));
    }
    b.Output(DType::kBool, b.BroadcastAll());
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    std::vector<Value> args(in.begin(), in.end());
    if (constant_) args.push_back(*constant_);
    return {LiftNary(args, [&](std::span<const Value* const> l) {
      const Value& a = *l[0];
      const Value& c = *l[1];
      switch (a.scalar_dtype()) {
        case DType::kInt64:
          return Value::Bool(Ordered(a.AsInt(), c.AsInt(), kind_));
        case DType::kFloat64:
          return Value::Bool(Ordered(a.AsFloat(), c.AsFloat(), kind_));
        case DType::kBool:
          return Value::Bool(Ordered(a.AsBool(), c.AsBool(), kind_));
        case DType::kString:
          return Value::Bool(Ordered(a.AsString(), c.AsString(), kind_));
      }
      return Value::Null();
    })};
  }

 private:
  std::string kind_;
  std::optional<Value> constant_;
};

class ConditionalSelectKernel : public TransformKernel {
 public:
  explicit ConditionalSelectKernel(Build& b) {
    const Json* if_true = b.params.Raw("ifTrue");
    const Json* if_false = b.params.Raw("ifFalse");
    const size_t branch_cols = (if_true ? 0 : 1) + (if_false ? 0 : 1);
    b.ExpectInputs(1 + branch_cols, 1 + branch_cols);
    b.ExpectOutputs(1);
    if (b.inputs[0].dtype != DType::kBool) {
      b.Fail(ErrorCode::kDTypeMismatch,
             "condition '" + b.inputs[0].name + "' must be bool");
    }
    std::optional<DType> dtype = b.params.OptionalDType("dtype");
    for (size_t i = 1; i < b.inputs.size(); ++i) {
      if (dtype && b.inputs[i].dtype != *dtype) {
        b.Fail(ErrorCode::kDTypeMismatch,
               "branch '" + b.inputs[i].name + "' has dtype " +
                   std::string(DTypeName(b.inputs[i].dtype)));
      }
      dtype = b.inputs[i].dtype;
    }
    for (const Json* c : {if_true, if_false}) {
      if (c == nullptr || dtype) continue;
      dtype = DTypeOfConstant(*c);
      if (!dtype) b.Fail(ErrorCode::kValidation, "branch constants must be scalars");
    }
    size_t next_col = 1;
    auto branch = [&](const Json* c, const char* key) -> Branch {
      if (c == nullptr) return Branch{static_cast<int>(next_col++), {}};
      Value v = ConstantOfType(*c, *dtype, b, key);
      b.params.SetCanonical(key, ValueToJson(v));
      return Branch{-1, std::move(v)};
    };
    true_ = branch(if_true, "ifTrue");
    false_ = branch(if_false, "ifFalse");
    b.params.SetCanonical("dtype", std::string(DTypeName(*dtype)));
    b.Output(*dtype, b.BroadcastAll());
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    const Value& t = true_.column >= 0 ? in[static_cast<size_t>(true_.column)]
                                       : true_.constant;
    const Value& f = false_.column >= 0 ? in[static_cast<size_t>(false_.column)]
                                        : false_.constant;
    return {Select(in[0], t, f)};
  }

 private:
  struct Branch {
    int column;  // -1 for a constant
    Value constant;
  };

  // Only a null condition or a null selected branch yields null.
  static Value Select(const Value& cond, const Value& t, const Value& f) {
    if (cond.is_null()) return Value::Null();
    if (!cond.is_list() && !t.is_list() && !f.is_list()) {
      return cond.AsBool() ? t : f;
    }
    size_t length = 0;
    bool have = false;
    for (const Value* v : {&cond, &t, &f}) {
      if (!v->is_list()) continue;
      if (have && v->AsList().size() != length) {
        throw Error(ErrorCode::kShapeMismatch, "operand list lengths differ");
      }
      length = v->AsList().size();
      have = true;
    }
    if (!cond.is_list()) {
      // A scalar condition picks a whole branch.
      return cond.AsBool() ? t : f;
    }
    Value::List out;
    out.reserve(length);
    for (size_t i = 0; i < length; ++i) {
      out.push_back(Select(cond.AsList()[i], t.is_list() ? t.AsList()[i] : t,
                           f.is_list() ? f.AsList()[i] : f));
    }
    return Value::MakeList(std::move(out));
  }

  Branch true_;
  Branch false_;
};

class ArrayAssembleKernel : public TransformKernel {
 public:
  explicit ArrayAssembleKernel(Build& b) {
    b.ExpectInputs(1, SIZE_MAX);
    b.ExpectOutputs(1);
    for (size_t i = 0; i < b.inputs.size(); ++i) {
      b.MaxRank(i, 0);
      if (b.inputs[i].dtype != b.inputs[0].dtype) {
        b.Fail(ErrorCode::kDTypeMismatch,
               "assembled columns must share a dtype: '" + b.inputs[0].name +
                   "' vs '" + b.inputs[i].name + "'");
      }
    }
    b.Output(b.inputs[0].dtype,
             ShapeSpec::List(static_cast<int64_t>(b.inputs.size())));
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {Value::MakeList(Value::List(in.begin(), in.end()))};
  }
};

class ArrayDisassembleKernel : public TransformKernel {
 public:
  explicit ArrayDisassembleKernel(Build& b) {
    b.ExpectInputs(1, 1);
    const FieldSpec& f = b.inputs[0];
    if (f.shape.rank() != 1) {
      b.Fail(ErrorCode::kShapeMismatch,
             "array_disassemble needs a rank-1 input, got " + f.shape.ToString());
    }
    if (f.shape.dims[0] != ShapeSpec::kVariable &&
        f.shape.dims[0] != static_cast<int64_t>(b.outputs.size())) {
      b.Fail(ErrorCode::kShapeMismatch,
             "list length " + std::to_string(f.shape.dims[0]) + " but " +
                 std::to_string(b.outputs.size()) + " output names");
    }
    for (size_t i = 0; i < b.outputs.size(); ++i) {
      b.Output(f.dtype, ShapeSpec::Scalar());
    }
    width_ = b.outputs.size();
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    if (in[0].is_null()) return std::vector<Value>(width_);
    return in[0].AsList();
  }

 private:
  size_t width_;
};

class ArraySliceKernel : public TransformKernel {
 public:
  explicit ArraySliceKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    const FieldSpec& f = b.inputs[0];
    if (f.shape.rank() == 0) {
      b.Fail(ErrorCode::kShapeMismatch, "array_slice needs a list input");
    }
    start_ = b.params.Int("start", 0, 0);
    length_ = b.params.Int("length", std::nullopt, 1);
    const int64_t inner = f.shape.dims.back();
    if (inner != ShapeSpec::kVariable && start_ + length_ > inner) {
      b.Fail(ErrorCode::kIndexOutOfRange,
             "slice [" + std::to_string(start_) + ", " +
                 std::to_string(start_ + length_) + ") exceeds length " +
                 std::to_string(inner));
    }
    rank_ = f.shape.rank();
    b.Output(f.dtype, f.shape.WithoutInnerAxis().WithInnerAxis(length_));
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {SliceAt(in[0], 1)};
  }

 private:
  Value SliceAt(const Value& v, int level) const {
    if (v.is_null()) return v;
    const auto& items = v.AsList();
    Value::List out;
    if (level < rank_) {
      for (const Value& item : items) out.push_back(SliceAt(item, level + 1));
    } else {
      out.assign(items.begin() + start_, items.begin() + start_ + length_);
    }
    return Value::MakeList(std::move(out));
  }

  int64_t start_;
  int64_t length_;
  int rank_;
};

class ListAggregateKernel : public TransformKernel {
 public:
  explicit ListAggregateKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    FieldSpec& f = b.inputs[0];
    if (f.shape.rank() == 0) {
      b.Fail(ErrorCode::kShapeMismatch, "list_aggregate needs a list input");
    }
    if (f.dtype == DType::kBool) f.dtype = DType::kInt64;
    if (f.dtype == DType::kString) {
      b.Fail(ErrorCode::kDTypeMismatch, "list_aggregate needs numeric input");
    }
    kind_ = b.params.Enum("kind", {"sum", "mean", "min", "max"}, std::nullopt);
    mask_ = b.params.OptionalDouble("maskValue");
    rank_ = f.shape.rank();
    int_out_ = f.dtype == DType::kInt64 && kind_ != "mean";
    b.Output(int_out_ ? DType::kInt64 : DType::kFloat64,
             f.shape.WithoutInnerAxis());
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {AggregateAt(in[0], 1)};
  }

 private:
  Value AggregateAt(const Value& v, int level) const {
    if (v.is_null()) return v;
    if (level < rank_) {
      Value::List out;
      for (const Value& item : v.AsList()) out.push_back(AggregateAt(item, level + 1));
      return Value::MakeList(std::move(out));
    }
    return Reduce(v.AsList());
  }

  Value Reduce(const Value::List& items) const {
    for (const Value& item : items) {
      if (item.is_null()) return Value::Null();
    }
    auto as_double = [](const Value& x) {
      return x.is_int() ? static_cast<double>(x.AsInt()) : x.AsFloat();
    };
    std::vector<const Value*> kept;
    for (const Value& item : items) {
      if (mask_ && as_double(item) == *mask_) continue;
      kept.push_back(&item);
    }
    if (kept.empty()) {
      throw Error(ErrorCode::kEmptyAggregate,
                  "every element of the list is masked or the list is empty");
    }
    if (int_out_) {
      int64_t acc = kind_ == "sum" ? 0 : kept[0]->AsInt();
      for (const Value* x : kept) {
        const int64_t n = x->AsInt();
        if (kind_ == "sum") {
          if (__builtin_add_overflow(acc, n, &acc)) {
            throw Error(ErrorCode::kRange, "int64 overflow in list sum");
          }
        } else if (kind_ == "min") {
          acc = std::min(acc, n);
        } else {
          acc = std::max(acc, n);
        }
      }
      return Value::Int(acc);
    }
    double acc = kind_ == "sum" || kind_ == "mean" ? 0.0 : as_double(*kept[0]);
    for (const Value* x : kept) {
      const double d = as_double(*x);
      if (kind_ == "sum" || kind_ == "mean") {
        acc += d;
      } else if (kind_ == "min") {
        acc = std::fmin(acc, d);
      } else {
        acc = std::fmax(acc, d);
      }
    }
    if (kind_ == "mean") acc /= static_cast<double>(kept.size());
    return Value::Float(acc);
  }

  std::string kind_;
  std::optional<double> mask_;
  int rank_;
  bool int_out_;
};

class CastKernel : public TransformKernel {
 public:
  explicit CastKernel(Build& b) {
    b.ExpectInputs(1, 1);
    b.ExpectOutputs(1);
    auto dtype = b.params.OptionalDType("dtype");
    if (!dtype) b.params.Fail("dtype", "is required");
    target_ = *dtype;
    b.Output(target_, b.inputs[0].shape);
  }
  std::vector<Value> Apply(std::span<const Value> in) const override {
    return {Coerce(in[0], target_)};
  }

 private:
  DType target_;
};

std::shared_ptr<const TransformKernel> MakeKernel(Build& b) {
  switch (b.kind) {
    case OpKind::kHashIndex:
      return std::make_shared<HashIndexKernel>(b);
    case OpKind::kBloomEncode:
      return std::make_shared<BloomEncodeKernel>(b);
    case OpKind::kLogTransform:
      return std::make_shared<LogTransformKernel>(b);
    case OpKind::kArithmetic:
      return std::make_shared<ArithmeticKernel>(b);
    case OpKind::kStringToList:
      return std::make_shared<StringToListKernel>(b);
    case OpKind::kRegexExtract:
      return std::make_shared<RegexExtractKernel>(b);
    case OpKind::kStringCase:
      return std::make_shared<StringCaseKernel>(b);
    case OpKind::kStringConcat:
      return std::make_shared<StringConcatKernel>(b);
    case OpKind::kDateDecompose:
      return std::make_shared<DateDecomposeKernel>(b);
    case OpKind::kDateDiffDays:
      return std::make_shared<DateDiffKernel>(b);
    case OpKind::kHaversine:
      return std::make_shared<HaversineKernel>(b);
    case OpKind::kLogical:
      return std::make_shared<LogicalKernel>(b);
    case OpKind::kCompare:
      return std::make_shared<CompareKernel>(b);
    case OpKind::kConditionalSelect:
      return std::make_shared<ConditionalSelectKernel>(b);
    case OpKind::kArrayAssemble:
      return std::make_shared<ArrayAssembleKernel>(b);
    case OpKind::kArrayDisassemble:
      return std::make_shared<ArrayDisassembleKernel>(b);
    case OpKind::kArraySlice:
      return std::make_shared<ArraySliceKernel>(b);
    case OpKind::kListAggregate:
      return std::make_shared<ListAggregateKernel>(b);
    case OpKind::kCast:
      return std::make_shared<CastKernel>(b);
    default:
      b.Fail(ErrorCode::kValidation,
             std::string(OpKindName(b.kind)) +
                 " is an estimator and needs fitting, not a transform");
  }
}

}  // namespace

Transform Transform::Create(OpKind kind, const std::string& stage,
                            const Json& params,
                            std::span<const FieldSpec> inputs,
                            std::span<const std::string> outputs) {
  ParamReader reader(params, stage);
  const std::optional<DType> input_dtype = reader.OptionalDType("inputDtype");
  std::vector<FieldSpec> effective = WithInputDtype(inputs, input_dtype);
  Build build{kind, stage, reader, effective, outputs, {}};

  Transform t;
  t.kind_ = kind;
  t.stage_ = stage;
  t.kernel_ = MakeKernel(build);
  reader.RejectUnknown();
  t.inputs_.assign(inputs.begin(), inputs.end());
  t.outputs_ = std::move(build.out_fields);
  t.params_ = reader.canonical();
  t.adapter_ = InputAdapter(inputs, effective);
  return t;
}

std::vector<Value> Transform::Apply(std::span<const Value> inputs) const {
  try {
    if (adapter_.identity()) return kernel_->Apply(inputs);
    std::vector<Value> adapted = adapter_.AdaptAll(inputs);
    return kernel_->Apply(adapted);
  } catch (const Error& e) {
    ErrorContext ctx{.stage = stage_};
    if (!inputs_.empty()) ctx.column = inputs_.front().name;
    throw e.WithContext(ctx);
  }
}

}  // namespace featherpipe

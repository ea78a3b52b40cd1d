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
#include "featherpipe/runtime/plan.h"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "featherpipe/core/murmur3.h"
#include "featherpipe/transforms/lifting.h"
#include "featherpipe/transforms/params.h"
#include "featherpipe/transforms/transform.h"

namespace featherpipe {
namespace {

// Scaled outputs are pinned to 0.0 when the fitted deviation is this small.
constexpr double kDegenerateStd = 1e-12;

[[noreturn]] void BadOp(const std::string& op, const std::string& why) {
  throw Error(ErrorCode::kManifest, "op '" + op + "': " + why);
}

class OpExec {
 public:
  virtual ~OpExec() = default;
  virtual std::vector<Value> Run(std::span<const Value> in) const = 0;
  const std::vector<FieldSpec>& outputs() const { return outputs_; }

 protected:
  std::vector<FieldSpec> outputs_;
};

class TransformExec : public OpExec {
 public:
  explicit TransformExec(Transform t) : transform_(std::move(t)) {
    outputs_ = transform_.output_fields();
  }
  std::vector<Value> Run(std::span<const Value> in) const override {
    return transform_.Apply(in);
  }

 private:
  Transform transform_;
};

// Shared plumbing for ops backed by fitted state: input adaptation and
// error context.
class StatefulExec : public OpExec {
 public:
  std::vector<Value> Run(std::span<const Value> in) const override {
    try {
      if (adapter_.identity()) return RunAdapted(in);
      std::vector<Value> adapted = adapter_.AdaptAll(in);
      return RunAdapted(adapted);
    } catch (const Error& e) {
      throw e.WithContext({.stage = stage_, .column = first_input_});
    }
  }

 protected:
  StatefulExec(const OpRecord& rec, std::span<const FieldSpec> declared,
               std::span<const FieldSpec> effective)
      : adapter_(declared, effective),
        stage_(rec.name),
        first_input_(declared.empty() ? std::string() : declared[0].name) {}
  virtual std::vector<Value> RunAdapted(std::span<const Value> in) const = 0;

 private:
  InputAdapter adapter_;
  std::string stage_;
  std::string first_input_;
};

const Json& StateField(const OpRecord& rec, const char* key) {
  if (!rec.state) BadOp(rec.name, "missing asset: no fitted state");
  auto it = rec.state->find(key);
  if (it == rec.state->end()) {
    BadOp(rec.name, std::string("missing asset '") + key + "'");
  }
  return *it;
}

void OnlyStateKeys(const OpRecord& rec,
                   std::initializer_list<std::string_view> keys) {
  if (!rec.state) BadOp(rec.name, "missing asset: no fitted state");
  for (auto it = rec.state->begin(); it != rec.state->end(); ++it) {
    bool known = false;
    for (auto k : keys) known = known || it.key() == k;
    if (!known) BadOp(rec.name, "unknown state field '" + it.key() + "'");
  }
}

std::vector<double> FiniteArray(const OpRecord& rec, const char* key) {
  const Json& node = StateField(rec, key);
  if (!node.is_array()) BadOp(rec.name, std::string("'") + key + "' must be a list");
  std::vector<double> out;
  for (const Json& x : node) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) {
      BadOp(rec.name, std::string("'") + key + "' must hold finite numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

// Label table with the mask / OOV / vocabulary layout.
class Vocabulary {
 public:
  Vocabulary(const OpRecord& rec, int64_t num_oov,
             std::optional<std::string> mask)
      : num_oov_(num_oov), mask_(std::move(mask)) {
    const Json& labels = StateField(rec, "labels");
    if (!labels.is_array() || labels.empty()) {
      BadOp(rec.name, "'labels' must be a non-empty list");
    }
    first_oov_ = mask_ ? 1 : 0;
    int64_t next = first_oov_ + num_oov_;
    for (const Json& l : labels) {
      if (!l.is_string()) BadOp(rec.name, "labels must be strings");
      const auto& s = l.get_ref<const std::string&>();
      if (mask_ && s == *mask_) BadOp(rec.name, "the mask token is a label");
      if (!table_.emplace(s, next++).second) {
        BadOp(rec.name, "duplicate label '" + s + "'");
      }
    }
    size_ = static_cast<int64_t>(labels.size());
  }

  // Index per the layout; 0 for the mask.
  int64_t Index(const std::string& s) const {
    if (mask_ && s == *mask_) return 0;
    auto it = table_.find(s);
    if (it != table_.end()) return it->second;
    return first_oov_ + FloorMod(Murmur3_32Signed(s, kHashSeed), num_oov_);
  }
  bool IsMask(const std::string& s) const { return mask_ && s == *mask_; }
  int64_t first_oov() const { return first_oov_; }
  int64_t num_oov() const { return num_oov_; }
  int64_t size() const { return size_; }

 private:
  int64_t num_oov_;
  std::optional<std::string> mask_;
  int64_t first_oov_ = 0;
  int64_t size_ = 0;
  std::unordered_map<std::string, int64_t> table_;
};

struct VocabParams {
  int64_t num_oov;
  std::optional<std::string> mask;
};

VocabParams ReadVocabParams(ParamReader& p) {
  p.Enum("stringOrderType",
         {"frequencyDesc", "frequencyAsc", "alphabeticalAsc", "alphabeticalDesc"},
         "frequencyDesc");
  VocabParams v;
  v.num_oov = p.Int("numOOVIndices", 1, 1);
  v.mask = p.OptionalString("maskToken");
  return v;
}

class IndexExec : public StatefulExec {
 public:
  IndexExec(const OpRecord& rec, std::span<const FieldSpec> declared,
            std::span<const FieldSpec> effective, const VocabParams& v)
      : StatefulExec(rec, declared, effective), vocab_(rec, v.num_oov, v.mask) {
    for (size_t i = 0; i < effective.size(); ++i) {
      outputs_.push_back({rec.outputs[i], DType::kInt64, effective[i].shape});
    }
  }

 protected:
  std::vector<Value> RunAdapted(std::span<const Value> in) const override {
    std::vector<Value> out;
    out.reserve(in.size());
    for (const Value& v : in) {
      out.push_back(LiftUnary(v, [&](const Value& leaf) {
        return Value::Int(vocab_.Index(leaf.AsString()));
      }));
    }
    return out;
  }

 private:
  Vocabulary vocab_;
};

class OneHotExec : public StatefulExec {
 public:
  OneHotExec(const OpRecord& rec, std::span<const FieldSpec> declared,
             std::span<const FieldSpec> effective, const VocabParams& v,
             bool drop_unseen)
      : StatefulExec(rec, declared, effective),
        vocab_(rec, v.num_oov, v.mask),
        drop_unseen_(drop_unseen) {
    width_ = drop_unseen_ ? vocab_.size() : vocab_.num_oov() + vocab_.size();
    if (effective[0].shape.rank() > 1) {
      BadOp(rec.name, "one_hot input must have rank <= 1");
    }
    outputs_.push_back({rec.outputs[0], DType::kFloat64,
                        effective[0].shape.WithInnerAxis(width_)});
  }

 protected:
  std::vector<Value> RunAdapted(std::span<const Value> in) const override {
    return {LiftUnary(in[0], [&](const Value& leaf) {
      Value::List hot(static_cast<size_t>(width_), Value::Float(0.0));
      const std::string& s = leaf.AsString();
      if (!vocab_.IsMask(s)) {
        // Slot within [OOV..., labels...], counted from the first OOV slot.
        int64_t slot = vocab_.Index(s) - vocab_.first_oov();
        if (drop_unseen_) slot -= vocab_.num_oov();
        if (slot >= 0) hot[static_cast<size_t>(slot)] = Value::Float(1.0);
      }
      return Value::MakeList(std::move(hot));
    })};
  }

 private:
  Vocabulary vocab_;
  bool drop_unseen_;
  int64_t width_;
};

class ScaleExec : public StatefulExec {
 public:
  ScaleExec(const OpRecord& rec, std::span<const FieldSpec> declared,
            std::span<const FieldSpec> effective)
      : StatefulExec(rec, declared, effective) {
    OnlyStateKeys(rec, {"mean", "std"});
    mean_ = FiniteArray(rec, "mean");
    std_ = FiniteArray(rec, "std");
    const ShapeSpec& shape = effective[0].shape;
    if (shape.rank() > 1) BadOp(rec.name, "standard_scale input must have rank <= 1");
    const size_t width = shape.rank() == 0 ? 1 : static_cast<size_t>(shape.dims[0]);
    if (mean_.size() != width || std_.size() != width) {
      BadOp(rec.name, "scaler statistics have the wrong width (want " +
                          std::to_string(width) + ")");
    }
    outputs_.push_back({rec.outputs[0], DType::kFloat64, shape});
  }

 protected:
  std::vector<Value> RunAdapted(std::span<const Value> in) const override {
    const Value& v = in[0];
    if (v.is_null()) return {v};
    if (!v.is_list()) return {Scale(v, 0)};
    if (v.AsList().size() != mean_.size()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "scaler fitted on width " + std::to_string(mean_.size()) +
                      ", got " + std::to_string(v.AsList().size()));
    }
    Value::List out;
    out.reserve(mean_.size());
    for (size_t i = 0; i < v.AsList().size(); ++i) {
      out.push_back(Scale(v.AsList()[i], i));
    }
    return {Value::MakeList(std::move(out))};
  }

 private:
  Value Scale(const Value& leaf, size_t i) const {
    if (leaf.is_null()) return leaf;
    if (std_[i] < kDegenerateStd) return Value::Float(0.0);
    return Value::Float((leaf.AsFloat() - mean_[i]) / std_[i]);
  }

  std::vector<double> mean_;
  std::vector<double> std_;
};

class ImputeExec : public StatefulExec {
 public:
  ImputeExec(const OpRecord& rec, std::span<const FieldSpec> declared,
             std::span<const FieldSpec> effective,
             std::optional<double> sentinel)
      : StatefulExec(rec, declared, effective), sentinel_(sentinel) {
    OnlyStateKeys(rec, {"imputeValue"});
    const Json& fill = StateField(rec, "imputeValue");
    if (!fill.is_number() || !std::isfinite(fill.get<double>())) {
      BadOp(rec.name, "'imputeValue' must be a finite number");
    }
    fill_ = fill.get<double>();
    rank_ = effective[0].shape.rank();
    outputs_.push_back({rec.outputs[0], DType::kFloat64, effective[0].shape});
  }

 protected:
  std::vector<Value> RunAdapted(std::span<const Value> in) const override {
    return {Fill(in[0], rank_)};
  }

 private:
  Value Fill(const Value& v, int depth) const {
    if (depth > 0) {
      if (v.is_null()) return v;
      Value::List out;
      out.reserve(v.AsList().size());
      for (const Value& item : v.AsList()) out.push_back(Fill(item, depth - 1));
      return Value::MakeList(std::move(out));
    }
    if (v.is_null() || std::isnan(v.AsFloat()) ||
        (sentinel_ && v.AsFloat() == *sentinel_)) {
      return Value::Float(fill_);
    }
    return v;
  }

  std::optional<double> sentinel_;
  double fill_ = 0.0;
  int rank_ = 0;
};

void RequireFloatOrBad(FieldSpec& f, const OpRecord& rec) {
  try {
    RequireFloat(f, rec.name);
  } catch (const Error& e) {
    BadOp(rec.name, e.detail());
  }
}

std::unique_ptr<OpExec> BuildStateful(const OpRecord& rec,
                                      std::span<const FieldSpec> declared) {
  ParamReader p(rec.params, rec.name);
  std::vector<FieldSpec> effective =
      WithInputDtype(declared, p.OptionalDType("inputDtype"));
  std::unique_ptr<OpExec> exec;
  switch (rec.op) {
    case OpKind::kStringIndex:
    case OpKind::kSharedStringIndex: {
      if (rec.op == OpKind::kStringIndex && declared.size() != 1) {
        BadOp(rec.name, "string_index takes exactly one input");
      }
      if (declared.empty() || rec.outputs.size() != declared.size()) {
        BadOp(rec.name, "needs one output per input");
      }
      const VocabParams v = ReadVocabParams(p);
      for (auto& f : effective) RequireString(f);
      OnlyStateKeys(rec, {"labels"});
      exec = std::make_unique<IndexExec>(rec, declared, effective, v);
      break;
    }
    case OpKind::kOneHot: {
      if (declared.size() != 1 || rec.outputs.size() != 1) {
        BadOp(rec.name, "one_hot takes one input and one output");
      }
      const VocabParams v = ReadVocabParams(p);
      const bool drop = p.Bool("dropUnseen", false);
      RequireString(effective[0]);
      OnlyStateKeys(rec, {"labels"});
      exec = std::make_unique<OneHotExec>(rec, declared, effective, v, drop);
      break;
    }
    case OpKind::kStandardScale:
      if (declared.size() != 1 || rec.outputs.size() != 1) {
        BadOp(rec.name, "standard_scale takes one input and one output");
      }
      RequireFloatOrBad(effective[0], rec);
      StateField(rec, "mean");
      exec = std::make_unique<ScaleExec>(rec, declared, effective);
      break;
    case OpKind::kImpute: {
      if (declared.size() != 1 || rec.outputs.size() != 1) {
        BadOp(rec.name, "impute takes one input and one output");
      }
      p.Enum("strategy", {"mean", "median"}, "mean");
      const std::optional<double> sentinel = p.OptionalDouble("sentinel");
      RequireFloatOrBad(effective[0], rec);
      StateField(rec, "imputeValue");
      exec = std::make_unique<ImputeExec>(rec, declared, effective, sentinel);
      break;
    }
    default:
      BadOp(rec.name, "not a stateful op");
  }
  p.RejectUnknown();
  return exec;
}

}  // namespace

class ExecutablePlan::Impl {
 public:
  struct Step {
    std::unique_ptr<OpExec> exec;
    std::vector<size_t> in_slots;
    std::vector<size_t> out_slots;
  };

  BundleManifest manifest;
  RowMode mode = RowMode::kStrict;
  std::vector<FieldSpec> inputs;
  std::vector<FieldSpec> columns;
  std::unordered_map<std::string, size_t> input_index;
  std::vector<Step> steps;

  std::vector<Value> Run(std::vector<Value> slots) const {
    slots.resize(columns.size());
    std::vector<Value> args;
    for (const Step& step : steps) {
      args.clear();
      for (size_t s : step.in_slots) args.push_back(slots[s]);
      std::vector<Value> out = step.exec->Run(args);
      for (size_t i = 0; i < out.size(); ++i) {
        slots[step.out_slots[i]] = std::move(out[i]);
      }
    }
    return slots;
  }
};

ExecutablePlan ExecutablePlan::FromManifest(BundleManifest manifest,
                                            RowMode mode) {
  auto impl = std::make_shared<Impl>();
  impl->mode = mode;
  std::unordered_map<std::string, size_t> slot_of;
  auto add_column = [&](const FieldSpec& f, const std::string& owner) {
    if (!IsValidFieldName(f.name)) {
      throw Error(ErrorCode::kManifest,
                  owner + ": invalid column name '" + f.name + "'");
    }
    if (!slot_of.emplace(f.name, impl->columns.size()).second) {
      throw Error(ErrorCode::kManifest,
                  owner + ": column '" + f.name + "' is produced twice");
    }
    impl->columns.push_back(f);
  };
  for (const FieldSpec& f : manifest.inputs) {
    if (!f.shape.IsFixed()) {
      throw Error(ErrorCode::kManifest,
                  "input '" + f.name + "' must have fixed dims");
    }
    add_column(f, "inputs");
    impl->input_index.emplace(f.name, impl->inputs.size());
    impl->inputs.push_back(f);
  }
  std::unordered_set<std::string> op_names;
  for (const OpRecord& rec : manifest.ops) {
    if (!op_names.insert(rec.name).second) BadOp(rec.name, "duplicate op name");
    Impl::Step step;
    std::vector<FieldSpec> declared;
    for (const std::string& in : rec.inputs) {
      auto it = slot_of.find(in);
      if (it == slot_of.end()) {
        BadOp(rec.name, "input column '" + in + "' is not produced earlier");
      }
      step.in_slots.push_back(it->second);
      declared.push_back(impl->columns[it->second]);
    }
    try {
      if (IsEstimator(rec.op)) {
        step.exec = BuildStateful(rec, declared);
      } else {
        if (rec.state) BadOp(rec.name, "stateless op carries state");
        step.exec = std::make_unique<TransformExec>(
            Transform::Create(rec.op, rec.name, rec.params, declared, rec.outputs));
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kManifest) throw;
      BadOp(rec.name, std::string(ErrorCodeName(e.code())) + ": " + e.detail());
    }
    for (const FieldSpec& f : step.exec->outputs()) {
      step.out_slots.push_back(impl->columns.size());
      add_column(f, "op '" + rec.name + "'");
    }
    impl->steps.push_back(std::move(step));
  }
  impl->manifest = std::move(manifest);
  return ExecutablePlan(std::move(impl));
}

ExecutablePlan ExecutablePlan::Load(std::string_view document, RowMode mode) {
  return FromManifest(ParseManifest(document), mode);
}

const BundleManifest& ExecutablePlan::manifest() const { return impl_->manifest; }
std::string ExecutablePlan::ToDocument() const {
  return WriteManifest(impl_->manifest);
}
RowMode ExecutablePlan::mode() const { return impl_->mode; }
const std::vector<FieldSpec>& ExecutablePlan::input_fields() const {
  return impl_->inputs;
}
const std::vector<FieldSpec>& ExecutablePlan::output_fields() const {
  return impl_->columns;
}

std::vector<Value> ExecutablePlan::Execute(std::span<const Value> inputs) const {
  if (inputs.size() != impl_->inputs.size()) {
    throw Error(ErrorCode::kRowValidation,
                "expected " + std::to_string(impl_->inputs.size()) +
                    " input values, got " + std::to_string(inputs.size()));
  }
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (auto why = CheckConforms(inputs[i], impl_->inputs[i])) {
      throw Error(ErrorCode::kRowValidation, *why,
                  {.column = impl_->inputs[i].name});
    }
  }
  return impl_->Run(std::vector<Value>(inputs.begin(), inputs.end()));
}

std::vector<Value> ExecutablePlan::Execute(const Row& row) const {
  std::vector<Value> slots(impl_->inputs.size());
  std::vector<bool> seen(impl_->inputs.size(), false);
  for (const auto& [name, value] : row) {
    auto it = impl_->input_index.find(name);
    if (it == impl_->input_index.end()) {
      if (impl_->mode == RowMode::kStrict) {
        throw Error(ErrorCode::kRowValidation, "unexpected field", {.column = name});
      }
      continue;
    }
    slots[it->second] = value;
    seen[it->second] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kRowValidation, "missing field",
                  {.column = impl_->inputs[i].name});
    }
  }
  return Execute(std::span<const Value>(slots));
}

std::vector<Value> ExecutablePlan::ExecuteJson(const Json& row) const {
  if (!row.is_object()) {
    throw Error(ErrorCode::kRowValidation, "row must be a JSON object");
  }
  std::vector<Value> slots(impl_->inputs.size());
  std::vector<bool> seen(impl_->inputs.size(), false);
  for (auto it = row.begin(); it != row.end(); ++it) {
    auto found = impl_->input_index.find(it.key());
    if (found == impl_->input_index.end()) {
      if (impl_->mode == RowMode::kStrict) {
        throw Error(ErrorCode::kRowValidation, "unexpected field",
                    {.column = it.key()});
      }
      continue;
    }
    slots[found->second] = JsonToValue(it.value(), impl_->inputs[found->second]);
    seen[found->second] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kRowValidation, "missing field",
                  {.column = impl_->inputs[i].name});
    }
  }
  return impl_->Run(std::move(slots));
}

BatchResult ExecutablePlan::ExecuteBatch(std::span<const Json> rows) const {
  BatchResult result;
  result.rows.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    try {
      result.rows.emplace_back(ExecuteJson(rows[i]));
    } catch (const Error& e) {
      result.rows.emplace_back(std::nullopt);
      result.errors.push_back(
          {i, e.WithContext({.row = static_cast<int64_t>(i)})});
    }
  }
  return result;
}

Json ExecutablePlan::OutputToJson(std::span<const Value> outputs) const {
  Json out = Json::object();
  for (size_t i = 0; i < outputs.size() && i < impl_->columns.size(); ++i) {
    out[impl_->columns[i].name] = ValueToJson(outputs[i]);
  }
  return out;
}

}  // namespace featherpipe

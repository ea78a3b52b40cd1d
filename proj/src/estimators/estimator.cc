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
#include "featherpipe/estimators/estimator.h"

#include "featherpipe/core/error.h"
#include "featherpipe/estimators/imputer.h"
#include "featherpipe/estimators/scaler.h"
#include "featherpipe/estimators/string_indexer.h"
#include "featherpipe/transforms/params.h"

namespace featherpipe {

FittedEstimator::FittedEstimator(std::string stage,
                                 std::vector<FieldSpec> inputs,
                                 std::vector<FieldSpec> outputs,
                                 InputAdapter adapter)
    : stage_(std::move(stage)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      adapter_(std::move(adapter)) {}

std::vector<Value> FittedEstimator::Apply(std::span<const Value> inputs) const {
  try {
    if (adapter_.identity()) return ApplyAdapted(inputs);
    std::vector<Value> adapted = adapter_.AdaptAll(inputs);
    return ApplyAdapted(adapted);
  } catch (const Error& e) {
    ErrorContext ctx{.stage = stage_};
    if (!inputs_.empty()) ctx.column = inputs_.front().name;
    throw e.WithContext(ctx);
  }
}

void Estimator::Accumulate(EstimatorPartial& partial,
                           std::span<const Value> row) const {
  try {
    if (adapter_.identity()) {
      AccumulateAdapted(partial, row);
    } else {
      std::vector<Value> adapted = adapter_.AdaptAll(row);
      AccumulateAdapted(partial, adapted);
    }
  } catch (const Error& e) {
    ErrorContext ctx{.stage = stage_};
    if (!inputs_.empty()) ctx.column = inputs_.front().name;
    throw e.WithContext(ctx);
  }
}

namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& stage,
                       const std::string& why) {
  throw Error(code, why, {.stage = stage});
}

template <typename T>
struct Box : EstimatorPartial {
  explicit Box(T v) : value(std::move(v)) {}
  T value;
};

template <typename T>
T& Unbox(EstimatorPartial& p) {
  return static_cast<Box<T>&>(p).value;
}
template <typename T>
const T& Unbox(const EstimatorPartial& p) {
  return static_cast<const Box<T>&>(p).value;
}

Json LabelsState(const VocabSpec& vocab) {
  Json labels = Json::array();
  for (const auto& l : vocab.labels) labels.push_back(l);
  return Json{{"labels", labels}};
}

// ---------------------------------------------------------------------------
// string_index, shared_string_index, one_hot

class FittedIndexer : public FittedEstimator {
 public:
  FittedIndexer(std::string stage, std::vector<FieldSpec> inputs,
                std::vector<FieldSpec> outputs, InputAdapter adapter,
                VocabSpec vocab)
      : FittedEstimator(std::move(stage), std::move(inputs), std::move(outputs),
                        std::move(adapter)),
        indexer_(std::move(vocab)) {}
  Json State() const override { return LabelsState(indexer_.vocab()); }

 protected:
  std::vector<Value> ApplyAdapted(std::span<const Value> in) const override {
    std::vector<Value> out;
    out.reserve(in.size());
    for (const Value& v : in) out.push_back(indexer_.Apply(v));
    return out;
  }

 private:
  StringIndexer indexer_;
};

class FittedOneHot : public FittedEstimator {
 public:
  FittedOneHot(std::string stage, std::vector<FieldSpec> inputs,
               std::vector<FieldSpec> outputs, InputAdapter adapter,
               VocabSpec vocab, bool drop_unseen)
      : FittedEstimator(std::move(stage), std::move(inputs), std::move(outputs),
                        std::move(adapter)),
        vocab_(vocab),
        encoder_(std::move(vocab), drop_unseen) {}
  Json State() const override { return LabelsState(vocab_); }

 protected:
  std::vector<Value> ApplyAdapted(std::span<const Value> in) const override {
    return {encoder_.Apply(in[0])};
  }

 private:
  VocabSpec vocab_;
  OneHotEncoder encoder_;
};

class IndexEstimator : public Estimator {
 public:
  IndexEstimator(OpKind kind, const std::string& stage, ParamReader& params,
                 std::span<const FieldSpec> inputs,
                 std::span<const std::string> outputs,
                 std::vector<FieldSpec> effective) {
    effective_inputs_ = std::move(effective);
    const auto order = ParseStringOrder(params.Enum(
        "stringOrderType",
        {"frequencyDesc", "frequencyAsc", "alphabeticalAsc", "alphabeticalDesc"},
        "frequencyDesc"));
    config_.order = *order;
    config_.num_oov = params.Int("numOOVIndices", 1, 1);
    config_.mask_token = params.OptionalString("maskToken");
    if (kind == OpKind::kOneHot) drop_unseen_ = params.Bool("dropUnseen", false);

    const size_t want_inputs = kind == OpKind::kSharedStringIndex ? 0 : 1;
    if (want_inputs == 1 ? inputs.size() != 1 : inputs.empty()) {
      Fail(ErrorCode::kValidation, stage,
           std::string(OpKindName(kind)) + " expects " +
               (want_inputs == 1 ? "1 input column" : "at least 1 input column") +
               ", got " + std::to_string(inputs.size()));
    }
    if (outputs.size() != inputs.size()) {
      Fail(ErrorCode::kValidation, stage,
           std::string(OpKindName(kind)) + " needs one output per input");
    }
    for (auto& f : effective_inputs_) RequireString(f);
    for (size_t i = 0; i < inputs.size(); ++i) {
      const FieldSpec& in = effective_inputs_[i];
      if (kind == OpKind::kOneHot) {
        if (in.shape.rank() > 1) {
          Fail(ErrorCode::kShapeMismatch, stage,
               "one_hot input '" + in.name + "' must have rank <= 1");
        }
        outputs_.push_back({outputs[i], DType::kFloat64,
                            in.shape.WithInnerAxis(ShapeSpec::kVariable)});
      } else {
        outputs_.push_back({outputs[i], DType::kInt64, in.shape});
      }
    }
  }

  std::unique_ptr<EstimatorPartial> NewPartial() const override {
    return std::make_unique<Box<FrequencyPartial>>(
        FrequencyPartial(config_.mask_token));
  }
  void Merge(EstimatorPartial& into,
             const EstimatorPartial& from) const override {
    Unbox<FrequencyPartial>(into).Merge(Unbox<FrequencyPartial>(from));
  }
  std::shared_ptr<const FittedEstimator> Finalize(
      const EstimatorPartial& partial) const override {
    VocabSpec vocab;
    try {
      vocab = FinalizeVocab(Unbox<FrequencyPartial>(partial), config_);
    } catch (const Error& e) {
      throw e.WithContext({.stage = stage_, .column = inputs_.front().name});
    }
    if (kind_ == OpKind::kOneHot) {
      OneHotEncoder probe(vocab, drop_unseen_);
      std::vector<FieldSpec> outs = outputs_;
      outs[0].shape.dims.back() = probe.width();
      return std::make_shared<FittedOneHot>(stage_, inputs_, std::move(outs),
                                            adapter_, std::move(vocab),
                                            drop_unseen_);
    }
    return std::make_shared<FittedIndexer>(stage_, inputs_, outputs_, adapter_,
                                           std::move(vocab));
  }

 protected:
  void AccumulateAdapted(EstimatorPartial& partial,
                         std::span<const Value> row) const override {
    auto& freq = Unbox<FrequencyPartial>(partial);
    for (const Value& v : row) freq.AddValue(v);
  }

 private:
  VocabSpec config_;
  bool drop_unseen_ = false;
};

// ---------------------------------------------------------------------------
// standard_scale

class FittedScaler : public FittedEstimator {
 public:
  FittedScaler(std::string stage, std::vector<FieldSpec> inputs,
               std::vector<FieldSpec> outputs, InputAdapter adapter,
               ScalerState state)
      : FittedEstimator(std::move(stage), std::move(inputs), std::move(outputs),
                        std::move(adapter)),
        state_(std::move(state)) {}
  Json State() const override {
    return Json{{"mean", state_.mean}, {"std", state_.stddev}};
  }

 protected:
  std::vector<Value> ApplyAdapted(std::span<const Value> in) const override {
    return {ApplyScaler(state_, in[0])};
  }

 private:
  ScalerState state_;
};

class ScaleEstimator : public Estimator {
 public:
  ScaleEstimator(const std::string& stage, std::span<const FieldSpec> inputs,
                 std::span<const std::string> outputs,
                 std::vector<FieldSpec> effective) {
    if (inputs.size() != 1 || outputs.size() != 1) {
      Fail(ErrorCode::kValidation, stage,
           "standard_scale expects 1 input and 1 output column");
    }
    effective_inputs_ = std::move(effective);
    FieldSpec& in = effective_inputs_[0];
    RequireFloat(in, stage);
    if (in.shape.rank() > 1) {
      Fail(ErrorCode::kShapeMismatch, stage,
           "standard_scale input '" + in.name + "' must have rank <= 1");
    }
    outputs_.push_back({outputs[0], DType::kFloat64, in.shape});
  }

  std::unique_ptr<EstimatorPartial> NewPartial() const override {
    const ShapeSpec& shape = effective_inputs_[0].shape;
    if (!shape.IsFixed()) {
      Fail(ErrorCode::kShapeMismatch, stage_,
           "standard_scale needs a fixed-width input, got " + shape.ToString());
    }
    const size_t width =
        shape.rank() == 0 ? 1 : static_cast<size_t>(shape.dims[0]);
    return std::make_unique<Box<MomentsPartial>>(MomentsPartial(width));
  }
  void Merge(EstimatorPartial& into,
             const EstimatorPartial& from) const override {
    Unbox<MomentsPartial>(into).Merge(Unbox<MomentsPartial>(from));
  }
  std::shared_ptr<const FittedEstimator> Finalize(
      const EstimatorPartial& partial) const override {
    ScalerState state;
    try {
      state = Unbox<MomentsPartial>(partial).Finalize();
    } catch (const Error& e) {
      throw e.WithContext({.stage = stage_, .column = inputs_.front().name});
    }
    return std::make_shared<FittedScaler>(stage_, inputs_, outputs_, adapter_,
                                          std::move(state));
  }

 protected:
  void AccumulateAdapted(EstimatorPartial& partial,
                         std::span<const Value> row) const override {
    Unbox<MomentsPartial>(partial).AddRow(row[0]);
  }
};

// ---------------------------------------------------------------------------
// impute

class FittedImputer : public FittedEstimator {
 public:
  FittedImputer(std::string stage, std::vector<FieldSpec> inputs,
                std::vector<FieldSpec> outputs, InputAdapter adapter,
                double fill, std::optional<double> sentinel, int rank)
      : FittedEstimator(std::move(stage), std::move(inputs), std::move(outputs),
                        std::move(adapter)),
        fill_(fill),
        sentinel_(sentinel),
        rank_(rank) {}
  Json State() const override { return Json{{"imputeValue", fill_}}; }

 protected:
  std::vector<Value> ApplyAdapted(std::span<const Value> in) const override {
    return {ApplyImpute(fill_, sentinel_, in[0], rank_)};
  }

 private:
  double fill_;
  std::optional<double> sentinel_;
  int rank_;
};

class ImputeEstimator : public Estimator {
 public:
  ImputeEstimator(const std::string& stage, ParamReader& params,
                  std::span<const FieldSpec> inputs,
                  std::span<const std::string> outputs,
                  std::vector<FieldSpec> effective) {
    strategy_ = *ParseImputeStrategy(
        params.Enum("strategy", {"mean", "median"}, "mean"));
    sentinel_ = params.OptionalDouble("sentinel");
    if (inputs.size() != 1 || outputs.size() != 1) {
      Fail(ErrorCode::kValidation, stage,
           "impute expects 1 input and 1 output column");
    }
    effective_inputs_ = std::move(effective);
    RequireFloat(effective_inputs_[0], stage);
    outputs_.push_back({outputs[0], DType::kFloat64, effective_inputs_[0].shape});
  }

  std::unique_ptr<EstimatorPartial> NewPartial() const override {
    return std::make_unique<Box<ImputePartial>>(
        ImputePartial(strategy_, sentinel_));
  }
  void Merge(EstimatorPartial& into,
             const EstimatorPartial& from) const override {
    Unbox<ImputePartial>(into).Merge(Unbox<ImputePartial>(from));
  }
  std::shared_ptr<const FittedEstimator> Finalize(
      const EstimatorPartial& partial) const override {
    double fill = 0.0;
    try {
      fill = Unbox<ImputePartial>(partial).Finalize();
    } catch (const Error& e) {
      throw e.WithContext({.stage = stage_, .column = inputs_.front().name});
    }
    return std::make_shared<FittedImputer>(stage_, inputs_, outputs_, adapter_,
                                           fill, sentinel_,
                                           effective_inputs_[0].shape.rank());
  }

 protected:
  void AccumulateAdapted(EstimatorPartial& partial,
                         std::span<const Value> row) const override {
    Unbox<ImputePartial>(partial).AddValue(row[0]);
  }

 private:
  ImputeStrategy strategy_ = ImputeStrategy::kMean;
  std::optional<double> sentinel_;
};

}  // namespace

std::unique_ptr<const Estimator> Estimator::Create(
    OpKind kind, const std::string& stage, const Json& params,
    std::span<const FieldSpec> inputs, std::span<const std::string> outputs) {
  ParamReader reader(params, stage);
  const std::optional<DType> input_dtype = reader.OptionalDType("inputDtype");
  std::vector<FieldSpec> effective = WithInputDtype(inputs, input_dtype);

  std::unique_ptr<Estimator> est;
  switch (kind) {
    case OpKind::kStringIndex:
    case OpKind::kSharedStringIndex:
    case OpKind::kOneHot:
      est = std::make_unique<IndexEstimator>(kind, stage, reader, inputs,
                                             outputs, std::move(effective));
      break;
    case OpKind::kStandardScale:
      est = std::make_unique<ScaleEstimator>(stage, inputs, outputs, effective);
      break;
    case OpKind::kImpute:
      est = std::make_unique<ImputeEstimator>(stage, reader, inputs, outputs,
                                              effective);
      break;
    default:
      Fail(ErrorCode::kValidation, stage,
           std::string(OpKindName(kind)) + " is not an estimator");
  }
  reader.RejectUnknown();
  est->kind_ = kind;
  est->stage_ = stage;
  est->inputs_.assign(inputs.begin(), inputs.end());
  est->params_ = reader.canonical();
  est->adapter_ = InputAdapter(inputs, est->effective_inputs_);
  return est;
}

}  // namespace featherpipe

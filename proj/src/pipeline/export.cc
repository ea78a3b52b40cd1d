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
#include "featherpipe/pipeline/export.h"

#include "featherpipe/estimators/estimator.h"
#include "featherpipe/transforms/transform.h"

namespace featherpipe {

BundleManifest ExportBundle(const FittedPipeline& fitted) {
  BundleManifest m;
  m.inputs = fitted.input_schema().fields();
  for (const FittedStage& stage : fitted.stages()) {
    OpRecord op;
    op.name = stage.name;
    op.op = stage.op;
    op.inputs = stage.inputs;
    for (const FieldSpec& f : stage.outputs) op.outputs.push_back(f.name);
    op.params = stage.params;
    op.state = stage.state;
    m.ops.push_back(std::move(op));
  }
  return m;
}

std::string ExportBundleDocument(const FittedPipeline& fitted) {
  return WriteManifest(ExportBundle(fitted));
}

BundleManifest ExportUnfitted(const Pipeline& pipeline) {
  const PipelineSpec& spec = pipeline.spec();
  const Schema& schema = pipeline.inferred_schema();
  BundleManifest m;
  m.inputs = spec.inputs.fields();
  for (size_t i : pipeline.order()) {
    const StageConfig& cfg = spec.stages[i];
    std::vector<FieldSpec> fields;
    for (const std::string& in : cfg.inputs) fields.push_back(*schema.Find(in));
    OpRecord op;
    op.name = cfg.name;
    op.op = cfg.op;
    op.inputs = cfg.inputs;
    op.outputs = cfg.outputs;
    op.params = IsEstimator(cfg.op)
                    ? Estimator::Create(cfg.op, cfg.name, cfg.params, fields,
                                        cfg.outputs)
                          ->params()
                    : Transform::Create(cfg.op, cfg.name, cfg.params, fields,
                                        cfg.outputs)
                          .params();
    m.ops.push_back(std::move(op));
  }
  return m;
}

}  // namespace featherpipe

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
#ifndef FEATHERPIPE_PIPELINE_EXPORT_H_
#define FEATHERPIPE_PIPELINE_EXPORT_H_

#include <string>

#include "featherpipe/pipeline/pipeline.h"
#include "featherpipe/runtime/manifest.h"

namespace featherpipe {

// Ops in execution order with effective params and inline fitted state.
BundleManifest ExportBundle(const FittedPipeline& fitted);
std::string ExportBundleDocument(const FittedPipeline& fitted);

// The op list of a compiled but unfitted pipeline: estimator ops carry no
// state, so the result describes the graph but cannot be executed.
BundleManifest ExportUnfitted(const Pipeline& pipeline);

}  // namespace featherpipe

#endif  // FEATHERPIPE_PIPELINE_EXPORT_H_

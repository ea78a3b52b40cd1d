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
#ifndef FEATHERPIPE_RUNTIME_MANIFEST_H_
#define FEATHERPIPE_RUNTIME_MANIFEST_H_

// The bundle document:
//
//   {"formatVersion": 1,
//    "inputs": [{"name", "dtype", "shape"}, ...],
//    "ops": [{"name", "op", "inputs", "outputs", "params", "state"?}, ...]}
//
// Keys are written in byte order and floats in shortest round-trip form,
// so equal manifests always serialize to equal bytes.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/value.h"
#include "featherpipe/transforms/catalog.h"

namespace featherpipe {

inline constexpr int64_t kBundleFormatVersion = 1;

struct OpRecord {
  std::string name;
  OpKind op = OpKind::kCast;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  Json params = Json::object();
  // Learned assets; present for estimator ops only.
  std::optional<Json> state;
};

struct BundleManifest {
  int64_t format_version = kBundleFormatVersion;
  std::vector<FieldSpec> inputs;
  std::vector<OpRecord> ops;
};

Json ManifestToJson(const BundleManifest& manifest);
std::string WriteManifest(const BundleManifest& manifest);

// Structural parse only; ops are checked when a plan is built. Throws
// Error(kManifest) for malformed or truncated documents, unsupported
// versions and unknown op kinds.
BundleManifest ParseManifest(std::string_view text);
BundleManifest ManifestFromJson(const Json& doc);

}  // namespace featherpipe

#endif  // FEATHERPIPE_RUNTIME_MANIFEST_H_

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
#include "featherpipe/runtime/manifest.h"

#include "featherpipe/core/error.h"

namespace featherpipe {
namespace {

[[noreturn]] void Bad(const std::string& why) {
  throw Error(ErrorCode::kManifest, why);
}

const Json& Member(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) Bad(where + " is missing '" + key + "'");
  return *it;
}

std::vector<std::string> Names(const Json& node, const std::string& where) {
  if (!node.is_array()) Bad(where + " must be a list of column names");
  std::vector<std::string> out;
  for (const Json& n : node) {
    if (!n.is_string()) Bad(where + " must be a list of column names");
    out.push_back(n.get<std::string>());
  }
  return out;
}

Json NamesToJson(const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const auto& n : names) out.push_back(n);
  return out;
}

}  // namespace

Json ManifestToJson(const BundleManifest& manifest) {
  Json inputs = Json::array();
  for (const FieldSpec& f : manifest.inputs) inputs.push_back(FieldSpecToJson(f));
  Json ops = Json::array();
  for (const OpRecord& op : manifest.ops) {
    Json rec = {{"name", op.name},
                {"op", std::string(OpKindName(op.op))},
                {"inputs", NamesToJson(op.inputs)},
                {"outputs", NamesToJson(op.outputs)},
                {"params", op.params}};
    if (op.state) rec["state"] = *op.state;
    ops.push_back(std::move(rec));
  }
  return Json{{"formatVersion", manifest.format_version},
              {"inputs", std::move(inputs)},
              {"ops", std::move(ops)}};
}

std::string WriteManifest(const BundleManifest& manifest) {
  return WriteCanonicalJson(ManifestToJson(manifest));
}

BundleManifest ManifestFromJson(const Json& doc) {
  if (!doc.is_object()) Bad("bundle must be a JSON object");
  const Json& version = Member(doc, "formatVersion", "bundle");
  if (!version.is_number_integer()) Bad("formatVersion must be an integer");
  BundleManifest m;
  m.format_version = version.get<int64_t>();
  if (m.format_version != kBundleFormatVersion) {
    Bad("unsupported version " + std::to_string(m.format_version) +
        " (this runtime reads version " + std::to_string(kBundleFormatVersion) +
        ")");
  }
  const Json& inputs = Member(doc, "inputs", "bundle");
  if (!inputs.is_array()) Bad("'inputs' must be a list");
  for (const Json& f : inputs) {
    try {
      m.inputs.push_back(FieldSpecFromJson(f));
    } catch (const Error& e) {
      Bad("bad input field: " + e.detail());
    }
  }
  const Json& ops = Member(doc, "ops", "bundle");
  if (!ops.is_array()) Bad("'ops' must be a list");
  for (size_t i = 0; i < ops.size(); ++i) {
    const Json& rec = ops[i];
    const std::string where = "op #" + std::to_string(i);
    if (!rec.is_object()) Bad(where + " must be an object");
    OpRecord op;
    const Json& name = Member(rec, "name", where);
    if (!name.is_string()) Bad(where + " name must be a string");
    op.name = name.get<std::string>();
    const std::string named = "op '" + op.name + "'";
    const Json& kind = Member(rec, "op", named);
    if (!kind.is_string()) Bad(named + " kind must be a string");
    auto parsed = ParseOpKind(kind.get<std::string>());
    if (!parsed) Bad(named + " has unknown op kind '" + kind.get<std::string>() + "'");
    op.op = *parsed;
    op.inputs = Names(Member(rec, "inputs", named), named + " inputs");
    op.outputs = Names(Member(rec, "outputs", named), named + " outputs");
    op.params = Member(rec, "params", named);
    if (!op.params.is_object()) Bad(named + " params must be an object");
    if (auto it = rec.find("state"); it != rec.end()) {
      if (!it->is_object()) Bad(named + " state must be an object");
      op.state = *it;
    }
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      const std::string& key = it.key();
      if (key != "name" && key != "op" && key != "inputs" && key != "outputs" &&
          key != "params" && key != "state") {
        Bad(named + " has unknown field '" + key + "'");
      }
    }
    m.ops.push_back(std::move(op));
  }
  return m;
}

BundleManifest ParseManifest(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    Bad("malformed or truncated bundle at byte " + std::to_string(e.byte) +
        ": " + e.what());
  }
  return ManifestFromJson(doc);
}

}  // namespace featherpipe

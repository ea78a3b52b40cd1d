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
#include "featherpipe/pipeline/spec.h"

#include <unordered_set>

#include "featherpipe/core/error.h"
#include "featherpipe/pipeline/pipeline.h"

namespace featherpipe {
namespace {

[[noreturn]] void Invalid(const std::string& why,
                          std::optional<std::string> stage = std::nullopt) {
  throw Error(ErrorCode::kValidation, why, {.stage = std::move(stage)});
}

std::vector<std::string> ColumnList(const Json& node, const std::string& stage,
                                    const char* field) {
  if (!node.is_array() || node.empty()) {
    Invalid(std::string("'") + field + "' must be a non-empty list of names",
            stage);
  }
  std::vector<std::string> out;
  for (const Json& n : node) {
    if (!n.is_string()) {
      Invalid(std::string("'") + field + "' must hold strings", stage);
    }
    out.push_back(n.get<std::string>());
  }
  return out;
}

Json Names(const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const auto& n : names) out.push_back(n);
  return out;
}

}  // namespace

PipelineSpec SpecFromJson(const Json& doc) {
  if (!doc.is_object()) Invalid("spec must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "version" && it.key() != "inputs" && it.key() != "stages") {
      Invalid("unknown top-level field '" + it.key() + "'");
    }
  }
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer()) {
    Invalid("'version' must be the integer 1");
  }
  if (version->get<int64_t>() != kSpecVersion) {
    Invalid("unsupported spec version " + std::to_string(version->get<int64_t>()));
  }

  PipelineSpec spec;
  auto inputs = doc.find("inputs");
  if (inputs == doc.end() || !inputs->is_array()) {
    Invalid("'inputs' must be a list of fields");
  }
  for (const Json& f : *inputs) spec.inputs.Add(FieldSpecFromJson(f));

  auto stages = doc.find("stages");
  if (stages == doc.end() || !stages->is_array()) {
    Invalid("'stages' must be a list");
  }
  std::unordered_set<std::string> names;
  for (size_t i = 0; i < stages->size(); ++i) {
    const Json& s = (*stages)[i];
    if (!s.is_object()) Invalid("stage #" + std::to_string(i) + " must be an object");
    StageConfig stage;
    auto name = s.find("name");
    if (name == s.end() || !name->is_string() || name->get<std::string>().empty()) {
      Invalid("stage #" + std::to_string(i) + " needs a non-empty 'name'");
    }
    stage.name = name->get<std::string>();
    if (!names.insert(stage.name).second) {
      Invalid("duplicate stage name", stage.name);
    }
    for (auto it = s.begin(); it != s.end(); ++it) {
      const std::string& k = it.key();
      if (k != "name" && k != "op" && k != "inputs" && k != "outputs" &&
          k != "params") {
        Invalid("unknown stage field '" + k + "'", stage.name);
      }
    }
    auto op = s.find("op");
    if (op == s.end() || !op->is_string()) Invalid("'op' must be a string", stage.name);
    auto kind = ParseOpKind(op->get<std::string>());
    if (!kind) Invalid("unknown op '" + op->get<std::string>() + "'", stage.name);
    stage.op = *kind;
    auto in = s.find("inputs");
    auto out = s.find("outputs");
    if (in == s.end()) Invalid("missing 'inputs'", stage.name);
    if (out == s.end()) Invalid("missing 'outputs'", stage.name);
    stage.inputs = ColumnList(*in, stage.name, "inputs");
    stage.outputs = ColumnList(*out, stage.name, "outputs");
    for (const auto& o : stage.outputs) {
      if (!IsValidFieldName(o)) {
        Invalid("invalid output column name '" + o + "'", stage.name);
      }
    }
    if (auto p = s.find("params"); p != s.end()) {
      if (!p->is_object()) Invalid("'params' must be an object", stage.name);
      stage.params = *p;
    }
    spec.stages.push_back(std::move(stage));
  }
  // Wiring, cycles and per-stage typing.
  Pipeline::Compile(spec);
  return spec;
}

PipelineSpec ParseSpec(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    throw Error(ErrorCode::kSpecParse,
                "at byte " + std::to_string(e.byte) + ": " + what);
  }
  return SpecFromJson(doc);
}

Json SpecToJson(const PipelineSpec& spec) {
  Json inputs = Json::array();
  for (const FieldSpec& f : spec.inputs.fields()) inputs.push_back(FieldSpecToJson(f));
  Json stages = Json::array();
  for (const StageConfig& s : spec.stages) {
    stages.push_back({{"name", s.name},
                      {"op", std::string(OpKindName(s.op))},
                      {"inputs", Names(s.inputs)},
                      {"outputs", Names(s.outputs)},
                      {"params", s.params}});
  }
  return Json{{"version", kSpecVersion}, {"inputs", inputs}, {"stages", stages}};
}

std::string WriteSpec(const PipelineSpec& spec) {
  return WriteCanonicalJson(SpecToJson(spec));
}

}  // namespace featherpipe

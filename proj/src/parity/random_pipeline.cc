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
#include "featherpipe/parity/random_pipeline.h"

#include <algorithm>

namespace featherpipe {
namespace {

using Names = std::vector<std::string>;

std::string Pick(Rng& rng, const Names& names) { return rng.Pick(names); }

Json RandomDouble(Rng& rng, double lo, double hi) {
  // Mix round and arbitrary constants.
  if (rng.Bernoulli(0.3)) return Json(static_cast<double>(rng.Uniform(
      static_cast<int64_t>(lo), static_cast<int64_t>(hi))));
  return Json(rng.UniformReal(lo, hi));
}

const Names kStringScalars = {"cat", "cat2", "big_cat", "code", "word", "text"};
const Names kStringAny = {"cat", "cat2", "big_cat", "code", "word",
                          "text", "tags", "nested_tags"};
const Names kStringRank1 = {"cat", "cat2", "big_cat", "code", "word", "text",
                            "tags"};
const Names kFloatScalars = {"x", "y", "amount", "lat1", "lon1"};
const Names kFloatAny = {"x", "y", "amount", "scores", "matrix"};
const Names kIndexable = {"cat", "cat2", "big_cat", "word", "tags",
                          "nested_tags", "text"};

class SpecBuilder {
 public:
  SpecBuilder(const CorpusSpec& corpus, Rng& rng) : rng_(rng) {
    spec_.inputs = CorpusSchema(corpus);
  }

  std::string Add(OpKind op, Names inputs, Json params, size_t outputs = 1) {
    StageConfig s;
    s.name = "s" + std::to_string(spec_.stages.size());
    s.op = op;
    s.inputs = std::move(inputs);
    for (size_t i = 0; i < outputs; ++i) {
      s.outputs.push_back(s.name + "_out" + std::to_string(i));
    }
    s.params = std::move(params);
    spec_.stages.push_back(s);
    return s.outputs.empty() ? std::string() : s.outputs.front();
  }

  Rng& rng() { return rng_; }
  PipelineSpec Take() { return std::move(spec_); }

 private:
  Rng& rng_;
  PipelineSpec spec_;
};

void IndexParams(Rng& rng, Json& p, bool allow_mask = true) {
  static const Names kOrders = {"frequencyDesc", "frequencyAsc",
                                "alphabeticalAsc", "alphabeticalDesc"};
  if (rng.Bernoulli(0.8)) p["stringOrderType"] = rng.Pick(kOrders);
  if (rng.Bernoulli(0.7)) p["numOOVIndices"] = rng.Uniform(1, 4);
  if (allow_mask && rng.Bernoulli(0.5)) {
    p["maskToken"] = rng.Bernoulli(0.8) ? std::string(kPadToken) : "a";
  }
}

// Numeric source: a float column, or the numeric-looking string column
// parsed through inputDtype.
std::string NumericSource(Rng& rng, const Names& pool, Json& p) {
  if (rng.Bernoulli(0.1)) {
    p["inputDtype"] = "float64";
    return "num_str";
  }
  if (rng.Bernoulli(0.1)) return rng.Bernoulli(0.5) ? "count" : "counts";
  return rng.Pick(pool);
}

void Build(const SweepOp& op, SpecBuilder& b) {
  Rng& rng = b.rng();
  Json p = Json::object();
  switch (op.kind) {
    case OpKind::kHashIndex: {
      p["numBins"] = rng.Bernoulli(0.2) ? rng.Uniform(1, 3) : rng.Uniform(1, 100000);
      if (rng.Bernoulli(0.5)) p["maskToken"] = kPadToken;
      const std::string in =
          rng.Bernoulli(0.1) ? std::string("id") : Pick(rng, kStringAny);
      b.Add(op.kind, {in}, p);
      return;
    }
    case OpKind::kBloomEncode:
      p["numBins"] = rng.Uniform(1, 50000);
      p["numHashes"] = rng.Uniform(1, 5);
      b.Add(op.kind, {Pick(rng, kStringRank1)}, p);
      return;
    case OpKind::kLogTransform: {
      if (rng.Bernoulli(0.7)) p["alpha"] = RandomDouble(rng, 0, 20);
      const std::string in = NumericSource(rng, kFloatAny, p);
      b.Add(op.kind, {in}, p);
      return;
    }
    case OpKind::kArithmetic: {
      static const Names kKinds = {"add", "sub", "mul", "div", "pow", "min", "max"};
      const std::string kind = rng.Pick(kKinds);
      p["kind"] = kind;
      if (rng.Bernoulli(0.5)) {
        p["constant"] = kind == "pow" ? RandomDouble(rng, -3, 3)
                                      : RandomDouble(rng, -1000, 1000);
        b.Add(op.kind, {NumericSource(rng, kFloatAny, p)}, p);
      } else {
        // Shapes must broadcast: scalar with anything, or equal shapes.
        static const std::vector<Names> kPairs = {
            {"x", "y"}, {"amount", "x"}, {"x", "scores"}, {"scores", "y"},
            {"scores", "scores"}, {"matrix", "x"}, {"y", "matrix"},
            {"lat1", "lon2"}, {"scores", "counts"}};
        b.Add(op.kind, rng.Pick(kPairs), p);
      }
      return;
    }
    case OpKind::kStringToList: {
      static const Names kSeps = {"|", "_", "-", "a", "||"};
      p["separator"] = rng.Pick(kSeps);
      p["listLength"] = rng.Uniform(1, 8);
      if (rng.Bernoulli(0.6)) p["defaultValue"] = kPadToken;
      const std::string in = rng.Bernoulli(0.6) ? std::string("text")
                                                : Pick(rng, kStringRank1);
      b.Add(op.kind, {in}, p);
      return;
    }
    case OpKind::kRegexExtract: {
      static const std::vector<std::pair<std::string, int>> kPatterns = {
          {"room_(\\d+)", 1},          {"([a-z]+)[-_](\\d*)", 2},
          {"^(\\w)", 1},               {"(\\d+)$", 1},
          {"(Action|Comedy)", 1},      {"[aeiou]+", 0},
          {"^([^|]*)\\|(.*)$", 2},     {"(x)?y", 1}};
      const auto& [pattern, groups] = rng.Pick(kPatterns);
      p["pattern"] = pattern;
      p["groupIndex"] = rng.Uniform(0, groups + 1);  // one past the last group
      if (rng.Bernoulli(0.5)) p["defaultValue"] = rng.Bernoulli(0.5) ? "none" : "";
      b.Add(op.kind, {Pick(rng, kStringAny)}, p);
      return;
    }
    case OpKind::kStringCase:
      p["kind"] = rng.Bernoulli(0.5) ? "upper" : "lower";
      b.Add(op.kind, {Pick(rng, kStringAny)}, p);
      return;
    case OpKind::kStringConcat: {
      static const std::vector<Names> kInputs = {
          {"cat"}, {"cat", "cat2"}, {"code", "word", "cat2"}, {"tags", "cat"},
          {"date_a", "date_b"}, {"tags", "tags"}};
      Names in = rng.Pick(kInputs);
      if (rng.Bernoulli(0.5)) p["separator"] = rng.Bernoulli(0.5) ? "_" : " | ";
      if (rng.Bernoulli(0.5)) {
        Json parts = Json::array();
        const int64_t n = rng.Uniform(1, 4);
        for (int64_t i = 0; i < n; ++i) {
          if (rng.Bernoulli(0.3)) {
            parts.push_back({{"value", rng.Bernoulli(0.5) ? "lit" : "ü"}});
          } else {
            parts.push_back(
                {{"input", rng.Uniform(0, static_cast<int64_t>(in.size()) - 1)}});
          }
        }
        p["parts"] = parts;
      }
      b.Add(op.kind, in, p);
      return;
    }
    case OpKind::kDateDecompose: {
      static const Names kParts = {"year", "month", "dayOfMonth", "weekday",
                                   "dayOfYear"};
      p["part"] = rng.Pick(kParts);
      b.Add(op.kind, {rng.Bernoulli(0.5) ? "date_a" : "date_b"}, p);
      return;
    }
    case OpKind::kDateDiffDays:
      if (rng.Bernoulli(0.5)) {
        b.Add(op.kind, {"date_a", "date_b"}, p);
      } else {
        b.Add(op.kind, {"date_b", "date_a"}, p);
      }
      return;
    case OpKind::kHaversine: {
      static const std::vector<Names> kInputs = {
          {"lat1", "lon1", "lat2", "lon2"}, {"lat2", "lon2", "lat1", "lon1"},
          {"lat1", "lon1", "lat1", "lon1"}, {"x", "lon1", "lat2", "y"}};
      b.Add(op.kind, rng.Pick(kInputs), p);
      return;
    }
    case OpKind::kLogical: {
      static const Names kKinds = {"and", "or", "not", "xor"};
      const std::string kind = rng.Pick(kKinds);
      p["kind"] = kind;
      static const Names kBools = {"flag_a", "flag_b", "flags"};
      if (kind == "not") {
        b.Add(op.kind, {Pick(rng, kBools)}, p);
      } else {
        b.Add(op.kind, {Pick(rng, kBools), Pick(rng, kBools)}, p);
      }
      return;
    }
    case OpKind::kCompare: {
      static const Names kKinds = {"eq", "ne", "lt", "le", "gt", "ge"};
      p["kind"] = rng.Pick(kKinds);
      switch (rng.Uniform(0, 4)) {
        case 0:
          p["value"] = RandomDouble(rng, -50, 50);
          b.Add(op.kind, {Pick(rng, kFloatAny)}, p);
          break;
        case 1:
          p["value"] = rng.Uniform(-5, 10);
          b.Add(op.kind, {rng.Bernoulli(0.5) ? "count" : "counts"}, p);
          break;
        case 2:
          p["value"] = rng.Bernoulli(0.5) ? "Action" : "m";
          b.Add(op.kind, {Pick(rng, kStringAny)}, p);
          break;
        case 3:
          b.Add(op.kind, {"x", rng.Bernoulli(0.5) ? "y" : "scores"}, p);
          break;
        default:
          b.Add(op.kind, {"flag_a", rng.Bernoulli(0.5) ? "flag_b" : "flags"}, p);
          break;
      }
      return;
    }
    case OpKind::kConditionalSelect: {
      const std::string cond = rng.Bernoulli(0.7) ? "flag_a" : "flags";
      switch (rng.Uniform(0, 2)) {
        case 0:
          b.Add(op.kind, {cond, "x", rng.Bernoulli(0.5) ? "y" : "scores"}, p);
          break;
        case 1:
          p["ifTrue"] = rng.Bernoulli(0.5) ? "yes" : "";
          b.Add(op.kind, {cond, Pick(rng, kStringRank1)}, p);
          break;
        default:
          p["ifTrue"] = RandomDouble(rng, -5, 5);
          p["ifFalse"] = 0.5;
          b.Add(op.kind, {cond}, p);
          break;
      }
      return;
    }
    case OpKind::kArrayAssemble: {
      static const std::vector<Names> kPools = {
          {"x", "y", "amount", "lat1", "lon1", "lat2", "lon2"},
          {"cat", "cat2", "code", "word"},
          {"id", "count"},
          {"flag_a", "flag_b"}};
      Names pool = rng.Pick(kPools);
      const int64_t n = rng.Uniform(1, static_cast<int64_t>(pool.size()) + 2);
      Names in;
      for (int64_t i = 0; i < n; ++i) in.push_back(rng.Pick(pool));
      b.Add(op.kind, in, p);
      return;
    }
    case OpKind::kArrayDisassemble: {
      if (rng.Bernoulli(0.3)) {
        // Disassemble a freshly assembled vector.
        const std::string v = b.Add(OpKind::kArrayAssemble, {"x", "y", "amount"},
                                    Json::object());
        b.Add(op.kind, {v}, p, 3);
        return;
      }
      static const Names kLists = {"tags", "scores", "counts", "flags"};
      // Output names are filled in once the list width is known.
      b.Add(op.kind, {rng.Pick(kLists)}, p, 0);
      return;
    }
    case OpKind::kArraySlice: {
      static const Names kLists = {"tags", "scores", "counts", "flags",
                                   "nested_tags", "matrix"};
      // start and length are drawn once the list width is known.
      b.Add(op.kind, {rng.Pick(kLists)}, p);
      return;
    }
    case OpKind::kListAggregate: {
      static const Names kLists = {"scores", "counts", "matrix", "flags"};
      static const Names kKinds = {"sum", "mean", "min", "max"};
      p["kind"] = rng.Pick(kKinds);
      if (rng.Bernoulli(0.5)) p["maskValue"] = 0.0;
      b.Add(op.kind, {rng.Pick(kLists)}, p);
      return;
    }
    case OpKind::kCast: {
      static const Names kTargets = {"int64", "float64", "bool", "string"};
      static const Names kSources = {"num_str", "x", "id", "count", "flag_a",
                                     "scores", "tags", "amount", "cat"};
      p["dtype"] = rng.Pick(kTargets);
      b.Add(op.kind, {rng.Pick(kSources)}, p);
      return;
    }
    case OpKind::kStringIndex:
      IndexParams(rng, p);
      b.Add(op.kind, {Pick(rng, kIndexable)}, p);
      return;
    case OpKind::kSharedStringIndex: {
      IndexParams(rng, p);
      static const std::vector<Names> kInputs = {
          {"cat", "cat2"}, {"tags", "cat2"}, {"cat", "word", "big_cat"},
          {"nested_tags", "cat"}, {"tags"}};
      Names in = rng.Pick(kInputs);
      const size_t n = in.size();
      b.Add(op.kind, in, p, n);
      return;
    }
    case OpKind::kOneHot: {
      IndexParams(rng, p);
      if (rng.Bernoulli(0.5)) p["dropUnseen"] = rng.Bernoulli(0.5);
      static const Names kInputs = {"cat", "cat2", "tags", "word"};
      std::string in = rng.Pick(kInputs);
      if (rng.Bernoulli(0.2)) {
        // Index a derived column so the fit sees transformed data.
        in = b.Add(OpKind::kStringCase, {in}, Json{{"kind", "lower"}});
      }
      b.Add(op.kind, {in}, p);
      return;
    }
    case OpKind::kStandardScale: {
      static const Names kInputs = {"x", "y", "amount", "scores", "lat1"};
      std::string in = NumericSource(rng, kInputs, p);
      if (in == "counts" || in == "count") p.erase("inputDtype");
      if (rng.Bernoulli(0.2)) {
        in = b.Add(OpKind::kLogTransform, {"amount"}, Json{{"alpha", 2.0}});
      }
      b.Add(op.kind, {in}, p);
      return;
    }
    case OpKind::kImpute: {
      p["strategy"] = op.label == "impute_median" ? "median" : "mean";
      if (rng.Bernoulli(0.5)) p["sentinel"] = rng.Bernoulli(0.7) ? -1.0 : 0.0;
      static const Names kInputs = {"x", "y", "amount", "scores", "matrix"};
      b.Add(op.kind, {NumericSource(rng, kInputs, p)}, p);
      return;
    }
  }
}

}  // namespace

const std::vector<SweepOp>& SweepOps() {
  static const std::vector<SweepOp> ops = [] {
    std::vector<SweepOp> out;
    for (OpKind k : TransformerKinds()) {
      out.push_back({std::string(OpKindName(k)), k});
    }
    for (OpKind k : EstimatorKinds()) {
      if (k == OpKind::kImpute) {
        out.push_back({"impute_mean", k});
        out.push_back({"impute_median", k});
      } else {
        out.push_back({std::string(OpKindName(k)), k});
      }
    }
    return out;
  }();
  return ops;
}

PipelineSpec RandomSweepSpec(const SweepOp& op, const CorpusSpec& corpus,
                             Rng& rng) {
  SpecBuilder b(corpus, rng);
  Build(op, b);
  PipelineSpec spec = b.Take();
  // Fix up choices that depend on the input shape.
  for (StageConfig& s : spec.stages) {
    const FieldSpec* in = spec.inputs.Find(s.inputs.front());
    if (in == nullptr) continue;
    if (s.op == OpKind::kArrayDisassemble && s.outputs.empty()) {
      for (int64_t i = 0; i < in->shape.dims[0]; ++i) {
        s.outputs.push_back(s.name + "_out" + std::to_string(i));
      }
    }
    if (s.op == OpKind::kArraySlice) {
      const int64_t inner = in->shape.dims.back();
      const int64_t start = rng.Bernoulli(0.7) ? rng.Uniform(0, inner - 1) : 0;
      if (start > 0) s.params["start"] = start;
      s.params["length"] = rng.Uniform(1, inner - start);
    }
  }
  return spec;
}

namespace {

// Chained feature engineering over LtrSchema, in the style of a
// learning-to-rank preprocessing graph.
class LtrBuilder {
 public:
  std::string Add(const std::string& name, OpKind op, Names inputs,
                  Json params = Json::object()) {
    Names outs = {name};
    AddMulti(name + "_stage", op, std::move(inputs), outs, std::move(params));
    return name;
  }
  void AddMulti(const std::string& stage, OpKind op, Names inputs, Names outputs,
                Json params = Json::object()) {
    StageConfig s;
    s.name = stage;
    s.op = op;
    s.inputs = std::move(inputs);
    s.outputs = std::move(outputs);
    s.params = std::move(params);
    spec.stages.push_back(std::move(s));
  }
  PipelineSpec spec;
};

}  // namespace

PipelineSpec LtrSpec() {
  LtrBuilder b;
  b.spec.inputs = LtrSchema();
  using K = OpKind;
  // Dates: decomposition and differences.
  for (const char* part : {"year", "month", "dayOfMonth", "weekday", "dayOfYear"}) {
    b.Add(std::string("search_") + part, K::kDateDecompose, {"search_date"},
          {{"part", part}});
  }
  b.Add("checkin_month", K::kDateDecompose, {"checkin_date"}, {{"part", "month"}});
  b.Add("checkin_weekday", K::kDateDecompose, {"checkin_date"},
        {{"part", "weekday"}});
  b.Add("lead_days", K::kDateDiffDays, {"checkin_date", "search_date"});
  b.Add("stay_nights", K::kDateDiffDays, {"checkout_date", "checkin_date"});
  b.Add("days_since_booked", K::kDateDiffDays, {"search_date", "last_booked_date"});
  // Magnitudes.
  b.Add("log_price", K::kLogTransform, {"price"}, {{"alpha", 1.0}});
  b.Add("log_distance", K::kLogTransform, {"distance_m"}, {{"alpha", 1.0}});
  b.Add("log_reviews", K::kLogTransform, {"review_count"}, {{"alpha", 1.0}});
  b.Add("log_lead", K::kLogTransform, {"lead_days"}, {{"alpha", 1.0}});
  b.Add("distance_km", K::kHaversine, {"user_lat", "user_lon", "hotel_lat", "hotel_lon"});
  b.Add("log_distance_km", K::kLogTransform, {"distance_km"}, {{"alpha", 1.0}});
  b.Add("nightly_total", K::kArithmetic, {"price", "stay_nights"}, {{"kind", "mul"}});
  b.Add("discount_keep", K::kArithmetic, {"discount"},
        {{"kind", "sub"}, {"constant", 1.0}});
  b.Add("discount_factor", K::kArithmetic, {"discount_keep"},
        {{"kind", "mul"}, {"constant", -1.0}});
  b.Add("net_total", K::kArithmetic, {"nightly_total", "discount_factor"},
        {{"kind", "mul"}});
  b.Add("log_net_total", K::kLogTransform, {"net_total"}, {{"alpha", 1.0}});
  b.Add("price_per_km", K::kArithmetic, {"price", "distance_km"}, {{"kind", "div"}});
  // Ratings: impute the sentinel, compare, select.
  b.Add("rating_filled", K::kImpute, {"rating"},
        {{"strategy", "median"}, {"sentinel", -1.0}});
  b.Add("is_high_rated", K::kCompare, {"rating_filled"}, {{"kind", "ge"}, {"value", 8.0}});
  b.Add("is_long_stay", K::kCompare, {"stay_nights"}, {{"kind", "ge"}, {"value", 7}});
  b.Add("is_weekend", K::kCompare, {"checkin_weekday"}, {{"kind", "ge"}, {"value", 6}});
  b.Add("member_weekend", K::kLogical, {"is_member", "is_weekend"}, {{"kind", "and"}});
  b.Add("not_member", K::kLogical, {"is_member"}, {{"kind", "not"}});
  b.Add("same_country", K::kCompare, {"origin_country", "destination_country"},
        {{"kind", "eq"}});
  b.Add("domestic_or_member", K::kLogical, {"same_country", "is_member"},
        {{"kind", "or"}});
  b.Add("boosted_rating", K::kConditionalSelect,
        {"member_weekend", "rating_filled"}, {{"ifFalse", 0.0}});
  b.Add("price_imputed", K::kImpute, {"log_price"}, {{"strategy", "mean"}});
  // Assemble -> scale -> disassemble.
  b.Add("numeric_vec", K::kArrayAssemble,
        {"price_imputed", "log_distance_km", "log_reviews", "rating_filled",
         "log_net_total"});
  b.Add("numeric_scaled", K::kStandardScale, {"numeric_vec"});
  b.AddMulti("numeric_split", K::kArrayDisassemble, {"numeric_scaled"},
             {"z_price", "z_distance", "z_reviews", "z_rating", "z_total"});
  b.Add("z_price_x_rating", K::kArithmetic, {"z_price", "z_rating"}, {{"kind", "mul"}});
  b.Add("z_head", K::kArraySlice, {"numeric_scaled"}, {{"start", 1}, {"length", 3}});
  b.Add("z_head_sum", K::kListAggregate, {"z_head"}, {{"kind", "sum"}});
  b.Add("z_max", K::kListAggregate, {"numeric_scaled"}, {{"kind", "max"}});
  // Categoricals.
  b.Add("destination_lower", K::kStringCase, {"destination"}, {{"kind", "lower"}});
  b.Add("destination_idx", K::kStringIndex, {"destination_lower"},
        {{"numOOVIndices", 2}});
  b.AddMulti("country_idx", K::kSharedStringIndex,
             {"origin_country", "destination_country"},
             {"origin_idx", "destination_country_idx"},
             {{"stringOrderType", "alphabeticalAsc"}});
  b.Add("property_idx", K::kStringIndex, {"property_type"},
        {{"stringOrderType", "alphabeticalDesc"}});
  b.Add("property_onehot", K::kOneHot, {"property_type"}, {{"dropUnseen", true}});
  b.Add("hotel_hash", K::kHashIndex, {"hotel_id"}, {{"numBins", 2048}});
  b.Add("hotel_bloom", K::kBloomEncode, {"hotel_id"},
        {{"numBins", 4096}, {"numHashes", 3}});
  b.Add("amenity_list", K::kStringToList, {"amenities"},
        {{"separator", ","}, {"listLength", 6}, {"defaultValue", "PADDED"}});
  b.Add("amenity_idx", K::kStringIndex, {"amenity_list"}, {{"maskToken", "PADDED"}});
  b.Add("amenity_hash", K::kHashIndex, {"amenity_list"},
        {{"numBins", 64}, {"maskToken", "PADDED"}});
  b.Add("amenity_count", K::kListAggregate, {"amenity_idx"},
        {{"kind", "max"}});
  b.Add("room_number", K::kRegexExtract, {"room_code"},
        {{"pattern", "room_(\\d+)"}, {"groupIndex", 1}, {"defaultValue", "0"}});
  b.Add("room_number_f", K::kCast, {"room_number"}, {{"dtype", "float64"}});
  b.Add("room_number_log", K::kLogTransform, {"room_number_f"}, {{"alpha", 1.0}});
  b.Add("route", K::kStringConcat, {"origin_country", "destination_country"},
        {{"separator", "->"}});
  b.Add("route_idx", K::kStringIndex, {"route"},
        {{"stringOrderType", "frequencyDesc"}, {"numOOVIndices", 3}});
  b.Add("member_int", K::kCast, {"is_member"}, {{"dtype", "int64"}});
  b.Add("season_key", K::kStringConcat, {"destination_lower", "checkin_month"},
        {{"parts", Json::array({{{"input", 0}}, {{"value", "m"}}, {{"input", 1}}})}});
  b.Add("season_hash", K::kHashIndex, {"season_key"}, {{"numBins", 1000}});
  b.Add("year_f", K::kCast, {"search_year"}, {{"dtype", "float64"}});
  b.Add("year_scaled", K::kStandardScale, {"year_f"});
  return std::move(b.spec);
}

}  // namespace featherpipe

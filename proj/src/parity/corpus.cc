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
#include "featherpipe/parity/corpus.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

namespace featherpipe {

int64_t Rng::Uniform(int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  if (span == 0) return static_cast<int64_t>(Next());  // full 64-bit range
  // Rejection sampling keeps the draw unbiased.
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % span;
  uint64_t r;
  do {
    r = Next();
  } while (r >= limit);
  return static_cast<int64_t>(static_cast<uint64_t>(lo) + r % span);
}

double Rng::UniformReal(double lo, double hi) {
  const double unit = static_cast<double>(Next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

bool Rng::Bernoulli(double p) { return UniformReal(0.0, 1.0) < p; }

namespace {

const std::vector<std::string> kGenres = {
    "Action", "Comedy", "Drama", "Horror", "Romance", "Sci-Fi", "Thriller",
    "Animation", "Documentary", "Western"};
const std::vector<std::string> kCats = {
    "a", "b", "c", "d", "e", "Action", "Comedy", "", "héllo", "ÉTÉ", "日本",
    "a b", "42"};
const std::vector<std::string> kWords = {
    "Pool", "straße", "Ωmega", "ÇA", "ПРИВЕТ", "mIxEd", "", "ÀÉÎÕÜ",
    "ĳssel", "HOTEL", "x_y-z", "ǅ"};
const std::vector<std::string> kNumStrings = {
    "42", "-7", "0", "3.5", "1e3", "-0.25", "007", "abc", "", "9007199254740993"};

std::string IsoDate(int64_t days_since_epoch) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{days{days_since_epoch}}};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

class Gen {
 public:
  Gen(const CorpusSpec& spec) : spec_(spec), rng_(spec.seed) {}

  // Null with the cell probability, otherwise make().
  Value Cell(const std::function<Value()>& make) {
    if (spec_.null_probability > 0 && rng_.Bernoulli(spec_.null_probability)) {
      return Value::Null();
    }
    return make();
  }
  Value Leaf(const std::function<Value()>& make) {
    if (spec_.null_probability > 0 && rng_.Bernoulli(spec_.null_probability / 2)) {
      return Value::Null();
    }
    return make();
  }
  Value List(int64_t n, const std::function<Value()>& leaf) {
    return Cell([&] {
      Value::List items;
      for (int64_t i = 0; i < n; ++i) items.push_back(Leaf(leaf));
      return Value::MakeList(std::move(items));
    });
  }
  Value Nested(const std::function<Value()>& leaf) {
    return Cell([&] {
      Value::List outer;
      for (int i = 0; i < 2; ++i) {
        // Inner lists may themselves be null.
        outer.push_back(Leaf([&] {
          Value::List inner;
          for (int j = 0; j < 3; ++j) inner.push_back(Leaf(leaf));
          return Value::MakeList(std::move(inner));
        }));
      }
      return Value::MakeList(std::move(outer));
    });
  }

  bool Masked() { return rng_.Bernoulli(spec_.mask_probability); }

  Value Category(const std::vector<std::string>& pool) {
    if (Masked()) return Value::String(kPadToken);
    return Value::String(rng_.Pick(pool));
  }

  Value Text() {
    const int64_t n = rng_.Uniform(0, 8);
    std::string s;
    for (int64_t i = 0; i < n; ++i) {
      if (i > 0) s += '|';
      s += Masked() ? std::string(kPadToken) : rng_.Pick(kGenres);
    }
    return Value::String(s);
  }

  Value Code() {
    switch (rng_.Uniform(0, 5)) {
      case 0:
        return Value::String("room_" + std::to_string(rng_.Uniform(0, 999)));
      case 1:
        return Value::String("suite-" + std::to_string(rng_.Uniform(0, 99)));
      case 2:
        return Value::String("room_");
      case 3:
        return Value::String("ab" + std::to_string(rng_.Uniform(0, 9)));
      case 4:
        return Value::String(rng_.Pick(kGenres) + "|" + rng_.Pick(kGenres));
      default:
        return Value::String("x");
    }
  }

  // Integers with the usual boundary values mixed in.
  Value Id() {
    switch (rng_.Uniform(0, 19)) {
      case 0:
        return Value::Int(0);
      case 1:
        return Value::Int(1);
      case 2:
        return Value::Int(-1);
      case 3:
        return Value::Int(std::numeric_limits<int64_t>::max());
      case 4:
        return Value::Int(std::numeric_limits<int64_t>::min());
      case 5:
        return Value::Int(rng_.Uniform(-1'000'000'000'000, 1'000'000'000'000));
      default:
        return Value::Int(rng_.Uniform(0, 2000));
    }
  }

  Value Count() {
    if (Masked()) return Value::Int(static_cast<int64_t>(kSentinel));
    return Value::Int(rng_.Uniform(0, 10));
  }

  // Floats across magnitudes, including both zeros and rare NaN.
  Value Real() {
    switch (rng_.Uniform(0, 24)) {
      case 0:
        return Value::Float(0.0);
      case 1:
        return Value::Float(-0.0);
      case 2:
        return Value::Float(1.0);
      case 3:
        return Value::Float(-1.0);
      case 4:
        return Value::Float(rng_.Bernoulli(0.5) ? 1e12 : -1e12);
      case 5:
        return Value::Float(rng_.UniformReal(-1e-9, 1e-9));
      case 6:
        return Value::Float(std::numeric_limits<double>::quiet_NaN());
      case 7:
        return Value::Float(rng_.UniformReal(-1e6, 1e6));
      default:
        return Value::Float(rng_.UniformReal(-100.0, 100.0));
    }
  }

  Value Amount() {
    if (Masked()) return Value::Float(kSentinel);
    if (rng_.Bernoulli(0.05)) return Value::Float(0.0);
    return Value::Float(std::exp(rng_.UniformReal(-3.0, 14.0)));
  }

  Value Score() {
    if (Masked()) return Value::Float(0.0);
    return Value::Float(rng_.UniformReal(-10.0, 10.0));
  }

  Value SmallInt() {
    if (Masked()) return Value::Int(0);
    return Value::Int(rng_.Uniform(-50, 50));
  }

  Value Date() {
    switch (rng_.Uniform(0, 49)) {
      case 0:
        return Value::String("2024-02-30");
      case 1:
        return Value::String("not-a-date");
      case 2:
        return Value::String("2024-02-29");
      case 3:
        return Value::String("1970-01-01");
      default:
        return Value::String(IsoDate(rng_.Uniform(7305, 21915)));  // 1990..2030
    }
  }

  Value Lat() {
    if (rng_.Bernoulli(0.01)) return Value::Float(90.5);
    return Value::Float(rng_.UniformReal(-90.0, 90.0));
  }
  Value Lon() {
    if (rng_.Bernoulli(0.01)) return Value::Float(-181.0);
    return Value::Float(rng_.UniformReal(-180.0, 180.0));
  }
  Value Flag() { return Value::Bool(rng_.Bernoulli(0.5)); }

  Rng& rng() { return rng_; }

 private:
  const CorpusSpec& spec_;
  Rng rng_;
};

}  // namespace

Schema CorpusSchema(const CorpusSpec& spec) {
  const int64_t l = spec.list_length;
  Schema s;
  for (const char* name : {"cat", "cat2", "big_cat", "text", "code", "word",
                           "num_str", "date_a", "date_b"}) {
    s.Add({name, DType::kString, ShapeSpec::Scalar()});
  }
  for (const char* name : {"id", "count"}) {
    s.Add({name, DType::kInt64, ShapeSpec::Scalar()});
  }
  for (const char* name : {"x", "y", "amount", "lat1", "lon1", "lat2", "lon2"}) {
    s.Add({name, DType::kFloat64, ShapeSpec::Scalar()});
  }
  s.Add({"flag_a", DType::kBool, ShapeSpec::Scalar()});
  s.Add({"flag_b", DType::kBool, ShapeSpec::Scalar()});
  s.Add({"tags", DType::kString, ShapeSpec::List(l)});
  s.Add({"scores", DType::kFloat64, ShapeSpec::List(l)});
  s.Add({"counts", DType::kInt64, ShapeSpec::List(l)});
  s.Add({"flags", DType::kBool, ShapeSpec::List(l)});
  s.Add({"nested_tags", DType::kString, ShapeSpec::Nested(2, 3)});
  s.Add({"matrix", DType::kFloat64, ShapeSpec::Nested(2, 3)});
  return s;
}

RecordBatch GenerateCorpusBatch(const CorpusSpec& spec) {
  const Schema schema = CorpusSchema(spec);
  Gen g(spec);
  Rng& rng = g.rng();
  const int64_t l = spec.list_length;
  std::vector<std::vector<Value>> rows;
  rows.reserve(spec.num_rows);
  for (size_t r = 0; r < spec.num_rows; ++r) {
    std::vector<Value> row;
    row.push_back(g.Cell([&] { return g.Category(kCats); }));
    row.push_back(g.Cell([&] { return g.Category(kGenres); }));
    row.push_back(g.Cell([&] {
      return Value::String("item_" + std::to_string(rng.Uniform(0, 500)));
    }));
    row.push_back(g.Cell([&] { return g.Text(); }));
    row.push_back(g.Cell([&] { return g.Code(); }));
    row.push_back(g.Cell([&] { return Value::String(rng.Pick(kWords)); }));
    row.push_back(g.Cell([&] { return Value::String(rng.Pick(kNumStrings)); }));
    row.push_back(g.Cell([&] { return g.Date(); }));
    row.push_back(g.Cell([&] { return g.Date(); }));
    row.push_back(g.Cell([&] { return g.Id(); }));
    row.push_back(g.Cell([&] { return g.Count(); }));
    row.push_back(g.Cell([&] { return g.Real(); }));
    row.push_back(g.Cell([&] { return g.Real(); }));
    row.push_back(g.Cell([&] { return g.Amount(); }));
    row.push_back(g.Cell([&] { return g.Lat(); }));
    row.push_back(g.Cell([&] { return g.Lon(); }));
    row.push_back(g.Cell([&] { return g.Lat(); }));
    row.push_back(g.Cell([&] { return g.Lon(); }));
    row.push_back(g.Cell([&] { return g.Flag(); }));
    row.push_back(g.Cell([&] { return g.Flag(); }));
    row.push_back(g.List(l, [&] { return g.Category(kGenres); }));
    row.push_back(g.List(l, [&] { return g.Score(); }));
    row.push_back(g.List(l, [&] { return g.SmallInt(); }));
    row.push_back(g.List(l, [&] { return g.Flag(); }));
    row.push_back(g.Nested([&] { return g.Category(kCats); }));
    row.push_back(g.Nested([&] { return g.Score(); }));
    rows.push_back(std::move(row));
  }
  return RecordBatch::FromRows(schema, rows);
}

std::vector<RecordBatch> GenerateCorpus(const CorpusSpec& spec) {
  return Partition(GenerateCorpusBatch(spec), std::max<size_t>(1, spec.num_partitions));
}

namespace {

Value SchemaLeaf(DType dtype, const SchemaCorpusOptions& options, Rng& rng) {
  switch (dtype) {
    case DType::kInt64:
      switch (rng.Uniform(0, 9)) {
        case 0:
          return Value::Int(rng.Bernoulli(0.5) ? std::numeric_limits<int64_t>::max()
                                               : std::numeric_limits<int64_t>::min());
        case 1:
        case 2:
          return Value::Int(rng.Uniform(-1000, 1000));
        default:
          return Value::Int(rng.Uniform(0, 50));
      }
    case DType::kFloat64:
      switch (rng.Uniform(0, 19)) {
        case 0:
          return Value::Float(0.0);
        case 1:
          return Value::Float(std::numeric_limits<double>::quiet_NaN());
        case 2:
          return Value::Float(rng.UniformReal(-1e9, 1e9));
        default:
          return Value::Float(rng.UniformReal(-100.0, 100.0));
      }
    case DType::kBool:
      return Value::Bool(rng.Bernoulli(0.5));
    case DType::kString:
      break;
  }
  for (const std::string& token : options.tokens) {
    if (rng.Bernoulli(0.06)) return Value::String(token);
  }
  switch (rng.Uniform(0, 9)) {
    case 0:
      return Value::String(IsoDate(rng.Uniform(7305, 21915)));
    case 1:
      return Value::String(std::to_string(rng.Uniform(-100, 100)));
    default:
      break;
  }
  std::string s = rng.Pick(kGenres);
  if (!options.separators.empty()) {
    const std::string& sep = rng.Pick(options.separators);
    for (int64_t i = 0, n = rng.Uniform(0, 3); i < n; ++i) {
      s += sep + rng.Pick(rng.Bernoulli(0.8) ? kGenres : kCats);
    }
  }
  return Value::String(s);
}

Value SchemaCell(const FieldSpec& field, size_t axis,
                 const SchemaCorpusOptions& options, Rng& rng) {
  const double p_null = axis == 0 ? options.null_probability
                                  : options.null_probability / 2;
  if (p_null > 0 && rng.Bernoulli(p_null)) return Value::Null();
  if (axis == field.shape.dims.size()) return SchemaLeaf(field.dtype, options, rng);
  int64_t n = field.shape.dims[axis];
  if (n == ShapeSpec::kVariable) n = rng.Uniform(0, 4);
  Value::List items;
  for (int64_t i = 0; i < n; ++i) {
    items.push_back(SchemaCell(field, axis + 1, options, rng));
  }
  return Value::MakeList(std::move(items));
}

}  // namespace

RecordBatch GenerateForSchema(const Schema& schema,
                              const SchemaCorpusOptions& options) {
  Rng rng(options.seed);
  std::vector<std::vector<Value>> rows(options.num_rows);
  for (auto& row : rows) {
    for (const FieldSpec& f : schema.fields()) {
      row.push_back(SchemaCell(f, 0, options, rng));
    }
  }
  return RecordBatch::FromRows(schema, rows);
}

Schema LtrSchema() {
  Schema s;
  for (const char* name : {"search_date", "checkin_date", "checkout_date",
                           "last_booked_date", "destination", "hotel_id",
                           "property_type", "amenities", "room_code",
                           "origin_country", "destination_country"}) {
    s.Add({name, DType::kString, ShapeSpec::Scalar()});
  }
  for (const char* name : {"price", "distance_m", "rating", "discount",
                           "user_lat", "user_lon", "hotel_lat", "hotel_lon"}) {
    s.Add({name, DType::kFloat64, ShapeSpec::Scalar()});
  }
  s.Add({"review_count", DType::kInt64, ShapeSpec::Scalar()});
  s.Add({"is_member", DType::kBool, ShapeSpec::Scalar()});
  return s;
}

RecordBatch GenerateLtrBatch(size_t num_rows, uint64_t seed) {
  static const std::vector<std::string> kDest = {
      "London", "Paris", "Rome", "Berlin", "Madrid", "Lisbon", "Prague",
      "Vienna", "Athens", "Dublin", "OSLO", "Zürich"};
  static const std::vector<std::string> kTypes = {
      "hotel", "apartment", "hostel", "villa", "b&b", "resort"};
  static const std::vector<std::string> kAmenities = {
      "wifi", "pool", "parking", "spa", "gym", "bar", "breakfast"};
  static const std::vector<std::string> kCountries = {
      "GB", "FR", "IT", "DE", "ES", "PT", "CZ", "AT", "GR", "IE", "NO", "CH"};
  Rng rng(seed);
  const Schema schema = LtrSchema();
  std::vector<std::vector<Value>> rows;
  rows.reserve(num_rows);
  auto maybe_null = [&](Value v) {
    return rng.Bernoulli(0.02) ? Value::Null() : std::move(v);
  };
  for (size_t r = 0; r < num_rows; ++r) {
    const int64_t search = rng.Uniform(18262, 20454);  // 2020..2025
    const int64_t checkin = search + rng.Uniform(0, 365);
    const int64_t checkout = checkin + rng.Uniform(1, 21);
    const int64_t last_booked = search - rng.Uniform(0, 2000);
    std::string amenities;
    for (int64_t i = 0, n = rng.Uniform(0, 6); i < n; ++i) {
      if (i > 0) amenities += ',';
      amenities += rng.Pick(kAmenities);
    }
    std::vector<Value> row;
    row.push_back(Value::String(IsoDate(search)));
    row.push_back(Value::String(IsoDate(checkin)));
    row.push_back(Value::String(IsoDate(checkout)));
    row.push_back(maybe_null(Value::String(IsoDate(last_booked))));
    row.push_back(Value::String(rng.Pick(kDest)));
    row.push_back(Value::String("h" + std::to_string(rng.Uniform(0, 5000))));
    row.push_back(maybe_null(Value::String(rng.Pick(kTypes))));
    row.push_back(Value::String(amenities));
    row.push_back(Value::String(rng.Bernoulli(0.8)
                                    ? "room_" + std::to_string(rng.Uniform(1, 40))
                                    : "standard"));
    row.push_back(Value::String(rng.Pick(kCountries)));
    row.push_back(Value::String(rng.Pick(kCountries)));
    row.push_back(Value::Float(std::exp(rng.UniformReal(3.0, 8.5))));
    row.push_back(Value::Float(std::exp(rng.UniformReal(2.0, 11.0))));
    row.push_back(rng.Bernoulli(0.1) ? Value::Float(kSentinel)
                                     : maybe_null(Value::Float(rng.UniformReal(1.0, 10.0))));
    row.push_back(Value::Float(rng.UniformReal(0.0, 0.5)));
    row.push_back(Value::Float(rng.UniformReal(-60.0, 70.0)));
    row.push_back(Value::Float(rng.UniformReal(-120.0, 150.0)));
    row.push_back(Value::Float(rng.UniformReal(35.0, 60.0)));
    row.push_back(Value::Float(rng.UniformReal(-10.0, 25.0)));
    row.push_back(Value::Int(rng.Uniform(0, 20000)));
    row.push_back(Value::Bool(rng.Bernoulli(0.3)));
    rows.push_back(std::move(row));
  }
  return RecordBatch::FromRows(schema, rows);
}

}  // namespace featherpipe

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
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "featherpipe/core/coerce.h"
#include "featherpipe/core/json_codec.h"
#include "featherpipe/core/murmur3.h"
#include "featherpipe/core/record_batch.h"
#include "test_values.h"

namespace featherpipe {
namespace {

using testing::B;
using testing::CaptureError;
using testing::F;
using testing::Field;
using testing::I;
using testing::L;
using testing::N;
using testing::S;

// Published MurmurHash3_x86_32 vectors.
TEST(Murmur3Test, ReferenceVectors) {
  EXPECT_EQ(Murmur3_32("", 0), 0u);
  EXPECT_EQ(Murmur3_32("", 1), 0x514e28b7u);
  EXPECT_EQ(Murmur3_32("Hello, world!", 1234), 0xfaf6cdb3u);
  EXPECT_EQ(Murmur3_32("The quick brown fox jumps over the lazy dog", 0x9747b28c),
            0x2fa826cdu);
}

// Seed-42 values pinned against an independent implementation, covering
// every tail length and multi-byte UTF-8.
TEST(Murmur3Test, SignedSeed42Goldens) {
  struct Case {
    const char* input;
    uint32_t seed;
    int32_t expected;
  };
  const Case cases[] = {
      {"42", 42, 1797003644},         {"42", 43, 1387365904},
      {"42", 44, -2074100941},        {"PADDED", 42, -1894736},
      {"hotel_123", 42, 1978701947},  {"hotel_123", 43, 1318834682},
      {"hotel_123", 44, 630700287},   {"a", 42, -1293573533},
      {"", 42, 142593372},            {"Action", 42, 101989460},
      {"Comedy", 42, -801893581},     {"h\xc3\xa9llo", 42, -159043077},
      {"abc", 42, 1313807976},        {"abcd", 42, -396302900},
      {"abcde", 42, -1361433616},
  };
  for (const Case& c : cases) {
    EXPECT_EQ(Murmur3_32Signed(c.input, c.seed), c.expected) << c.input;
  }
}

TEST(Murmur3Test, FloorModIsNonNegative) {
  EXPECT_EQ(FloorMod(-1, 10), 9);
  EXPECT_EQ(FloorMod(-10, 10), 0);
  EXPECT_EQ(FloorMod(7, 1), 0);
  EXPECT_EQ(FloorMod(std::numeric_limits<int32_t>::min(), 3), 1);
}

TEST(ValueTest, EqualityAndIdentity) {
  EXPECT_EQ(L({I(1), N()}), L({I(1), N()}));
  EXPECT_NE(I(1), F(1.0));
  const Value nan = F(std::nan(""));
  EXPECT_NE(nan, nan);
  EXPECT_TRUE(nan.IdenticalTo(F(std::nan(""))));
  EXPECT_FALSE(F(0.0).IdenticalTo(F(-0.0)));
  EXPECT_EQ(L({L({S("a")})}).Depth(), 2);
  EXPECT_EQ(N().Depth(), 0);
}

TEST(ValueTest, ConformanceChecks) {
  const FieldSpec list3 = Field("v", DType::kInt64, {3});
  EXPECT_FALSE(CheckConforms(L({I(1), N(), I(3)}), list3));
  EXPECT_FALSE(CheckConforms(N(), list3));
  EXPECT_TRUE(CheckConforms(L({I(1), I(2)}), list3));
  EXPECT_TRUE(CheckConforms(L({I(1), S("x"), I(3)}), list3));
  EXPECT_TRUE(CheckConforms(I(1), list3));
  const FieldSpec var = Field("v", DType::kString, {ShapeSpec::kVariable});
  EXPECT_FALSE(CheckConforms(L({S("a")}), var));
  EXPECT_FALSE(CheckConforms(L({}), var));
}

TEST(SchemaTest, RejectsDuplicateAndBadNames) {
  Schema s;
  s.Add(Field("a", DType::kInt64));
  EXPECT_EQ(CaptureError([&] { s.Add(Field("a", DType::kBool)); }).code(),
            ErrorCode::kValidation);
  EXPECT_EQ(CaptureError([&] { s.Add(Field("x/y", DType::kBool)); }).code(),
            ErrorCode::kValidation);
  EXPECT_EQ(CaptureError([&] { s.Add(Field("", DType::kBool)); }).code(),
            ErrorCode::kValidation);
  EXPECT_EQ(s.IndexOf("a"), 0u);
  EXPECT_EQ(s.Find("b"), nullptr);
}

TEST(ShapeSpecTest, AxisHelpers) {
  EXPECT_EQ(ShapeSpec::Scalar().WithInnerAxis(4), ShapeSpec::List(4));
  EXPECT_EQ(ShapeSpec::List(2).WithInnerAxis(3), ShapeSpec::Nested(2, 3));
  EXPECT_EQ(ShapeSpec::Nested(2, 3).WithoutInnerAxis(), ShapeSpec::List(2));
  EXPECT_FALSE(ShapeSpec::List(ShapeSpec::kVariable).IsFixed());
}

TEST(CoerceTest, CanonicalRendering) {
  EXPECT_EQ(CanonicalRender(I(-42)), "-42");
  EXPECT_EQ(CanonicalRender(B(true)), "true");
  EXPECT_EQ(CanonicalRender(F(2.5)), "2.5");
  EXPECT_EQ(CanonicalRender(F(3.0)), "3");
  EXPECT_EQ(CanonicalRender(F(0.1)), "0.1");
  EXPECT_EQ(CanonicalRender(S("x")), "x");
}

TEST(CoerceTest, Conversions) {
  EXPECT_EQ(Coerce(S("12"), DType::kInt64), I(12));
  EXPECT_EQ(Coerce(S("2.5"), DType::kFloat64), F(2.5));
  EXPECT_EQ(Coerce(F(4.0), DType::kInt64), I(4));
  EXPECT_EQ(Coerce(B(true), DType::kFloat64), F(1.0));
  EXPECT_EQ(Coerce(I(7), DType::kString), S("7"));
  EXPECT_EQ(Coerce(L({I(1), N()}), DType::kString), L({S("1"), N()}));
  EXPECT_EQ(Coerce(N(), DType::kBool), N());
  EXPECT_EQ(Coerce(S("true"), DType::kBool), B(true));
  for (const Value& bad : {S("12x"), S(""), S(" 1"), F(2.5), F(1e300)}) {
    EXPECT_EQ(CaptureError([&] { Coerce(bad, DType::kInt64); }).code(),
              ErrorCode::kCoercion)
        << bad.DebugString();
  }
}

TEST(JsonCodecTest, CanonicalOutput) {
  const Json doc = Json::parse(R"({"b": 1.0, "a": [2.5, 1e20, -0.0, 3], "c": "x"})");
  EXPECT_EQ(WriteCanonicalJson(doc),
            R"({"a":[2.5,1e+20,-0.0,3],"b":1.0,"c":"x"})");
  EXPECT_EQ(CaptureError([] {
              WriteCanonicalJson(Json(std::numeric_limits<double>::infinity()));
            }).code(),
            ErrorCode::kInvalidArgument);
}

TEST(JsonCodecTest, CanonicalOutputReparsesToSameDocument) {
  const Json doc = Json::parse(R"({"x": [0.1, 0.30000000000000004, 123456789.125]})");
  const std::string text = WriteCanonicalJson(doc);
  EXPECT_EQ(Json::parse(text), doc);
  EXPECT_EQ(WriteCanonicalJson(Json::parse(text)), text);
}

TEST(JsonCodecTest, ValueRoundTrip) {
  const FieldSpec f = Field("m", DType::kFloat64, {2, 2});
  const Value v = L({L({F(1.5), N()}), N()});
  EXPECT_EQ(JsonToValue(ValueToJson(v), f), v);
  EXPECT_EQ(ValueToJson(F(std::nan(""))), Json("NaN"));
  EXPECT_TRUE(JsonToValue(Json("NaN"), Field("x", DType::kFloat64))
                  .IdenticalTo(F(std::nan(""))));
  EXPECT_EQ(JsonToValue(Json("-Infinity"), Field("x", DType::kFloat64)),
            F(-std::numeric_limits<double>::infinity()));
}

TEST(JsonCodecTest, DecodeErrorsNameTheField) {
  const Error e = CaptureError(
      [] { JsonToValue(Json::array({1, 2}), Field("v", DType::kInt64, {3})); });
  EXPECT_EQ(e.code(), ErrorCode::kRowValidation);
  EXPECT_NE(std::string(e.what()).find("v"), std::string::npos);
}

TEST(JsonCodecTest, FieldSpecRoundTrip) {
  const FieldSpec f = Field("tags", DType::kString, {4});
  EXPECT_EQ(FieldSpecFromJson(FieldSpecToJson(f)), f);
  EXPECT_EQ(CaptureError([] {
              FieldSpecFromJson(Json{{"name", "x"}, {"dtype", "complex64"}, {"shape", Json::array()}});
            }).code(),
            ErrorCode::kValidation);
}

TEST(ErrorTest, ContextFillsOnlyUnsetFields) {
  const Error inner(ErrorCode::kDomain, "bad", {.column = "x"});
  const Error outer = inner.WithContext({.stage = "s", .column = "y", .row = 3});
  EXPECT_EQ(outer.context().stage, "s");
  EXPECT_EQ(outer.context().column, "x");
  EXPECT_EQ(outer.context().row, 3);
  EXPECT_EQ(outer.code(), ErrorCode::kDomain);
  EXPECT_NE(std::string(outer.what()).find("row 3"), std::string::npos);
}

Schema TwoColumns() {
  return Schema({Field("id", DType::kInt64), Field("tags", DType::kString, {2})});
}

TEST(RecordBatchTest, RowsAndColumns) {
  const RecordBatch b = RecordBatch::FromRows(
      TwoColumns(), {{I(1), L({S("a"), S("b")})}, {I(2), N()}, {N(), L({N(), S("c")})}});
  EXPECT_EQ(b.num_rows(), 3u);
  EXPECT_EQ(b.Row(1), (std::vector<Value>{I(2), N()}));
  EXPECT_EQ(b.Find("id")->values[2], N());
  EXPECT_EQ(b.Slice(1, 3).num_rows(), 2u);
  EXPECT_EQ(b.Filter({true, false, true}).Row(1)[0], N());
  const std::vector<std::string> names = {"tags"};
  EXPECT_EQ(b.Select(names).num_columns(), 1u);
}

TEST(RecordBatchTest, RejectsNonConformingRows) {
  EXPECT_EQ(CaptureError([] {
              RecordBatch::FromRows(TwoColumns(), {{S("x"), N()}});
            }).code(),
            ErrorCode::kValidation);
}

TEST(RecordBatchTest, PartitionAndConcatenateRoundTrip) {
  std::vector<std::vector<Value>> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({I(i), N()});
  const RecordBatch b = RecordBatch::FromRows(TwoColumns(), rows);
  for (size_t k : {1, 2, 3, 4, 8, 10, 13}) {
    const std::vector<RecordBatch> parts = Partition(b, k);
    ASSERT_EQ(parts.size(), k);
    // The first n % k partitions get one extra row.
    for (size_t p = 0; p < k; ++p) {
      EXPECT_EQ(parts[p].num_rows(), 10 / k + (p < 10 % k ? 1 : 0));
    }
    const RecordBatch joined = Concatenate(parts);
    for (size_t r = 0; r < 10; ++r) EXPECT_EQ(joined.Row(r), b.Row(r));
  }
}

TEST(RecordBatchTest, WithColumnSharesExistingColumns) {
  const RecordBatch b = RecordBatch::FromRows(TwoColumns(), {{I(1), N()}});
  const RecordBatch c = b.WithColumn(std::make_shared<const Column>(
      Column{Field("x", DType::kBool), {B(true)}}));
  EXPECT_EQ(c.num_columns(), 3u);
  EXPECT_EQ(c.column_ptr(0).get(), b.column_ptr(0).get());
}

}  // namespace
}  // namespace featherpipe

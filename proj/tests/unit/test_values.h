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
#ifndef FEATHERPIPE_TESTS_UNIT_TEST_VALUES_H_
#define FEATHERPIPE_TESTS_UNIT_TEST_VALUES_H_

// Terse value builders for tests.

#include <initializer_list>
#include <string>

#include <gtest/gtest.h>

#include "featherpipe/core/error.h"
#include "featherpipe/core/value.h"

namespace featherpipe::testing {

inline Value N() { return Value::Null(); }
inline Value I(int64_t v) { return Value::Int(v); }
inline Value F(double v) { return Value::Float(v); }
inline Value B(bool v) { return Value::Bool(v); }
inline Value S(std::string v) { return Value::String(std::move(v)); }
inline Value L(std::initializer_list<Value> items) {
  return Value::MakeList(Value::List(items));
}

inline FieldSpec Field(std::string name, DType dtype,
                       std::vector<int64_t> dims = {}) {
  return {std::move(name), dtype, ShapeSpec{std::move(dims)}};
}

// Runs `fn` and returns the Error it throws; fails the test otherwise.
template <typename Fn>
Error CaptureError(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an Error";
  return Error(ErrorCode::kInvalidArgument, "no error thrown");
}

}  // namespace featherpipe::testing

#endif  // FEATHERPIPE_TESTS_UNIT_TEST_VALUES_H_

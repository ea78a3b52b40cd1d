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
#ifndef FEATHERPIPE_TRANSFORMS_LIFTING_H_
#define FEATHERPIPE_TRANSFORMS_LIFTING_H_

// Element-wise lifting of scalar functions over nested values. Every
// element-wise op in the catalog, in both backends, goes through these two
// templates, so a list cell behaves exactly like its leaves would.

#include <span>
#include <string>
#include <vector>

#include "featherpipe/core/error.h"
#include "featherpipe/core/value.h"

namespace featherpipe {

// Applies `fn(const Value& leaf) -> Value` to every non-null leaf.
template <typename Fn>
Value LiftUnary(const Value& v, const Fn& fn) {
  if (v.is_null()) return v;
  if (!v.is_list()) return fn(v);
  const auto& items = v.AsList();
  Value::List out;
  out.reserve(items.size());
  for (const Value& item : items) out.push_back(LiftUnary(item, fn));
  return Value::MakeList(std::move(out));
}

namespace lifting_internal {

template <typename Fn>
Value LiftLevel(std::vector<const Value*>& args, const Fn& fn,
                bool propagate_nulls) {
  size_t length = 0;
  bool any_list = false;
  for (const Value* a : args) {
    if (propagate_nulls && a->is_null()) return Value::Null();
    if (a->is_list()) {
      const size_t n = a->AsList().size();
      if (any_list && n != length) {
        throw Error(ErrorCode::kShapeMismatch,
                    "operand lists have lengths " + std::to_string(length) +
                        " and " + std::to_string(n));
      }
      any_list = true;
      length = n;
    }
  }
  if (!any_list) return fn(std::span<const Value* const>(args));

  Value::List out;
  out.reserve(length);
  std::vector<const Value*> child(args.size());
  for (size_t i = 0; i < length; ++i) {
    for (size_t a = 0; a < args.size(); ++a) {
      child[a] = args[a]->is_list() ? &args[a]->AsList()[i] : args[a];
    }
    out.push_back(LiftLevel(child, fn, propagate_nulls));
  }
  return Value::MakeList(std::move(out));
}

}  // namespace lifting_internal

// Applies `fn(span<const Value* const> leaves) -> Value` position-wise over
// operands of equal shape. A scalar operand is broadcast over list operands;
// that is the only broadcast allowed. With `propagate_nulls`, any null
// operand at a position yields null there; otherwise `fn` sees the nulls.
template <typename Fn>
Value LiftNary(std::span<const Value> args, const Fn& fn,
               bool propagate_nulls = true) {
  std::vector<const Value*> ptrs;
  ptrs.reserve(args.size());
  for (const Value& a : args) ptrs.push_back(&a);
  return lifting_internal::LiftLevel(ptrs, fn, propagate_nulls);
}

}  // namespace featherpipe

#endif  // FEATHERPIPE_TRANSFORMS_LIFTING_H_

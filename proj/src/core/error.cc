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
#include "featherpipe/core/error.h"

#include <utility>

namespace featherpipe {
namespace {

std::string Render(ErrorCode code, const std::string& detail,
                   const ErrorContext& ctx) {
  std::string out(ErrorCodeName(code));
  if (ctx.stage) out += " [stage " + *ctx.stage + "]";
  if (ctx.column) out += " [column " + *ctx.column + "]";
  if (ctx.partition) out += " [partition " + std::to_string(*ctx.partition) + "]";
  if (ctx.row) out += " [row " + std::to_string(*ctx.row) + "]";
  out += ": ";
  out += detail;
  return out;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCoercion:
      return "CoercionError";
    case ErrorCode::kDomain:
      return "DomainError";
    case ErrorCode::kDivideByZero:
      return "DivideByZero";
    case ErrorCode::kShapeMismatch:
      return "ShapeMismatch";
    case ErrorCode::kDTypeMismatch:
      return "DTypeMismatch";
    case ErrorCode::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::kDateParse:
      return "DateParseError";
    case ErrorCode::kRange:
      return "RangeError";
    case ErrorCode::kEmptyAggregate:
      return "EmptyAggregate";
    case ErrorCode::kInvalidPattern:
      return "InvalidPattern";
    case ErrorCode::kEmptyVocabulary:
      return "EmptyVocabulary";
    case ErrorCode::kAllMissing:
      return "AllMissing";
    case ErrorCode::kSpecParse:
      return "SpecParseError";
    case ErrorCode::kValidation:
      return "ValidationError";
    case ErrorCode::kCycle:
      return "CycleError";
    case ErrorCode::kManifest:
      return "ManifestError";
    case ErrorCode::kRowValidation:
      return "RowValidationError";
    case ErrorCode::kIo:
      return "IoError";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, std::string message, ErrorContext context)
    : std::runtime_error(Render(code, message, context)),
      code_(code),
      detail_(std::move(message)),
      context_(std::move(context)) {}

Error Error::WithContext(const ErrorContext& outer) const {
  ErrorContext merged = context_;
  if (!merged.stage) merged.stage = outer.stage;
  if (!merged.column) merged.column = outer.column;
  if (!merged.partition) merged.partition = outer.partition;
  if (!merged.row) merged.row = outer.row;
  return Error(code_, detail_, std::move(merged));
}

}  // namespace featherpipe

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
#ifndef FEATHERPIPE_CORE_ERROR_H_
#define FEATHERPIPE_CORE_ERROR_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace featherpipe {

enum class ErrorCode {
  kCoercion,
  kDomain,
  kDivideByZero,
  kShapeMismatch,
  kDTypeMismatch,
  kIndexOutOfRange,
  kDateParse,
  kRange,
  kEmptyAggregate,
  kInvalidPattern,
  kEmptyVocabulary,
  kAllMissing,
  kSpecParse,
  kValidation,
  kCycle,
  kManifest,
  kRowValidation,
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// Where an error happened. Filled in progressively as the error unwinds
// through the execution layers.
struct ErrorContext {
  std::optional<std::string> stage;
  std::optional<std::string> column;
  std::optional<int64_t> partition;
  std::optional<int64_t> row;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, ErrorContext context = {});

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }
  const ErrorContext& context() const { return context_; }

  // Returns a copy with unset context fields taken from `outer`.
  Error WithContext(const ErrorContext& outer) const;

 private:
  ErrorCode code_;
  std::string detail_;
  ErrorContext context_;
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_CORE_ERROR_H_

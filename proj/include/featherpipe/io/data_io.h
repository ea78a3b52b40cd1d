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
#ifndef FEATHERPIPE_IO_DATA_IO_H_
#define FEATHERPIPE_IO_DATA_IO_H_

// Dataset files. jsonlines is the primary format (one JSON object per line,
// native lists and nulls); csv is a header-first, scalar-only convenience.
// Fields the schema does not name are ignored; absent fields read as null.

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "featherpipe/core/record_batch.h"

namespace featherpipe {

enum class DataFormat { kJsonLines, kCsv };

std::optional<DataFormat> ParseDataFormat(std::string_view name);
// By file extension (.csv -> csv, anything else -> jsonlines).
DataFormat GuessDataFormat(std::string_view path);

struct IngestOptions {
  DataFormat format = DataFormat::kJsonLines;
  // csv cells equal to this read as null.
  std::string null_token;
};

// Throws Error(kIo) for malformed lines (with the 0-based row) and
// Error(kRowValidation) for values that do not fit the schema.
RecordBatch ReadJsonLines(std::istream& in, const Schema& schema);
RecordBatch ReadCsv(std::istream& in, const Schema& schema,
                    const std::string& null_token);
// Throws Error(kIo) naming the path when it cannot be read.
RecordBatch ReadDataFile(const std::string& path, const Schema& schema,
                         const IngestOptions& options);

// One JSON object per row, keys in byte order. A non-empty `select` limits
// the output to those columns.
void WriteJsonLines(std::ostream& out, const RecordBatch& batch,
                    std::span<const std::string> select = {});

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view text);

}  // namespace featherpipe

#endif  // FEATHERPIPE_IO_DATA_IO_H_

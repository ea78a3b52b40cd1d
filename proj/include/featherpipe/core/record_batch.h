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
#ifndef FEATHERPIPE_CORE_RECORD_BATCH_H_
#define FEATHERPIPE_CORE_RECORD_BATCH_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "featherpipe/core/value.h"

namespace featherpipe {

struct Column {
  FieldSpec field;
  std::vector<Value> values;
};

using ColumnPtr = std::shared_ptr<const Column>;

// An immutable block of rows stored column by column. Columns are shared
// between batches, so adding a column never copies the existing ones.
class RecordBatch {
 public:
  RecordBatch() = default;
  // Zero-row batch with the given schema.
  explicit RecordBatch(const Schema& schema);

  // Every column must hold exactly `num_rows` entries conforming to its
  // field; throws Error(kValidation) otherwise.
  static RecordBatch FromColumns(std::vector<ColumnPtr> columns,
                                 size_t num_rows);
  static RecordBatch FromRows(const Schema& schema,
                              const std::vector<std::vector<Value>>& rows);

  size_t num_rows() const { return num_rows_; }
  size_t num_columns() const { return columns_.size(); }
  const Schema& schema() const { return schema_; }
  const Column& column(size_t i) const { return *columns_[i]; }
  const ColumnPtr& column_ptr(size_t i) const { return columns_[i]; }
  const Column* Find(std::string_view name) const;

  // Appends a column without re-validating existing ones.
  RecordBatch WithColumn(ColumnPtr column) const;
  RecordBatch Select(std::span<const std::string> names) const;
  // Keeps rows whose `keep` flag is set.
  RecordBatch Filter(const std::vector<bool>& keep) const;
  RecordBatch Slice(size_t begin, size_t end) const;

  std::vector<Value> Row(size_t i) const;

 private:
  Schema schema_;
  std::vector<ColumnPtr> columns_;
  size_t num_rows_ = 0;
};

// Splits `batch` into `k` contiguous partitions of near-equal size (the
// first `n % k` partitions get one extra row).
std::vector<RecordBatch> Partition(const RecordBatch& batch, size_t k);

// Concatenates batches sharing one schema.
RecordBatch Concatenate(std::span<const RecordBatch> batches);

}  // namespace featherpipe

#endif  // FEATHERPIPE_CORE_RECORD_BATCH_H_

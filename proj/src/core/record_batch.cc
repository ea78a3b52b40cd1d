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
#include "featherpipe/core/record_batch.h"

#include "featherpipe/core/error.h"

namespace featherpipe {

RecordBatch::RecordBatch(const Schema& schema) {
  for (const FieldSpec& f : schema.fields()) {
    schema_.Add(f);
    columns_.push_back(std::make_shared<const Column>(Column{f, {}}));
  }
}

RecordBatch RecordBatch::FromColumns(std::vector<ColumnPtr> columns,
                                     size_t num_rows) {
  RecordBatch batch;
  batch.num_rows_ = num_rows;
  for (auto& col : columns) {
    if (col->values.size() != num_rows) {
      throw Error(ErrorCode::kValidation,
                  "column '" + col->field.name + "' has " +
                      std::to_string(col->values.size()) + " rows, expected " +
                      std::to_string(num_rows));
    }
    for (size_t r = 0; r < num_rows; ++r) {
      if (auto why = CheckConforms(col->values[r], col->field)) {
        throw Error(ErrorCode::kValidation, *why,
                    {.column = col->field.name,
                     .row = static_cast<int64_t>(r)});
      }
    }
    batch.schema_.Add(col->field);
    batch.columns_.push_back(std::move(col));
  }
  return batch;
}

RecordBatch RecordBatch::FromRows(const Schema& schema,
                                  const std::vector<std::vector<Value>>& rows) {
  std::vector<ColumnPtr> columns;
  for (size_t c = 0; c < schema.size(); ++c) {
    Column col{schema.fields()[c], {}};
    col.values.reserve(rows.size());
    for (const auto& row : rows) {
      if (row.size() != schema.size()) {
        throw Error(ErrorCode::kValidation,
                    "row has " + std::to_string(row.size()) +
                        " cells, schema has " + std::to_string(schema.size()));
      }
      col.values.push_back(row[c]);
    }
    columns.push_back(std::make_shared<const Column>(std::move(col)));
  }
  return FromColumns(std::move(columns), rows.size());
}

const Column* RecordBatch::Find(std::string_view name) const {
  auto idx = schema_.IndexOf(name);
  return idx ? columns_[*idx].get() : nullptr;
}

RecordBatch RecordBatch::WithColumn(ColumnPtr column) const {
  if (column->values.size() != num_rows_) {
    throw Error(ErrorCode::kValidation,
                "column '" + column->field.name + "' length mismatch");
  }
  RecordBatch out = *this;
  out.schema_.Add(column->field);
  out.columns_.push_back(std::move(column));
  return out;
}

RecordBatch RecordBatch::Select(std::span<const std::string> names) const {
  RecordBatch out;
  out.num_rows_ = num_rows_;
  for (const std::string& name : names) {
    auto idx = schema_.IndexOf(name);
    if (!idx) {
      throw Error(ErrorCode::kValidation, "no column named '" + name + "'");
    }
    out.schema_.Add(schema_.fields()[*idx]);
    out.columns_.push_back(columns_[*idx]);
  }
  return out;
}

RecordBatch RecordBatch::Filter(const std::vector<bool>& keep) const {
  RecordBatch out;
  out.schema_ = schema_;
  size_t kept = 0;
  for (size_t r = 0; r < num_rows_; ++r) kept += keep[r] ? 1 : 0;
  out.num_rows_ = kept;
  for (const auto& col : columns_) {
    Column next{col->field, {}};
    next.values.reserve(kept);
    for (size_t r = 0; r < num_rows_; ++r) {
      if (keep[r]) next.values.push_back(col->values[r]);
    }
    out.columns_.push_back(std::make_shared<const Column>(std::move(next)));
  }
  return out;
}

RecordBatch RecordBatch::Slice(size_t begin, size_t end) const {
  RecordBatch out;
  out.schema_ = schema_;
  out.num_rows_ = end - begin;
  for (const auto& col : columns_) {
    Column next{col->field,
                {col->values.begin() + static_cast<ptrdiff_t>(begin),
                 col->values.begin() + static_cast<ptrdiff_t>(end)}};
    out.columns_.push_back(std::make_shared<const Column>(std::move(next)));
  }
  return out;
}

std::vector<Value> RecordBatch::Row(size_t i) const {
  std::vector<Value> row;
  row.reserve(columns_.size());
  for (const auto& col : columns_) row.push_back(col->values[i]);
  return row;
}

std::vector<RecordBatch> Partition(const RecordBatch& batch, size_t k) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "partition count is 0");
  std::vector<RecordBatch> parts;
  const size_t n = batch.num_rows();
  size_t begin = 0;
  for (size_t p = 0; p < k; ++p) {
    const size_t size = n / k + (p < n % k ? 1 : 0);
    parts.push_back(batch.Slice(begin, begin + size));
    begin += size;
  }
  return parts;
}

RecordBatch Concatenate(std::span<const RecordBatch> batches) {
  if (batches.empty()) return RecordBatch();
  const Schema& schema = batches.front().schema();
  std::vector<ColumnPtr> columns;
  size_t total = 0;
  for (const auto& b : batches) total += b.num_rows();
  for (size_t c = 0; c < schema.size(); ++c) {
    Column col{schema.fields()[c], {}};
    col.values.reserve(total);
    for (const auto& b : batches) {
      if (!(b.schema() == schema)) {
        throw Error(ErrorCode::kValidation,
                    "cannot concatenate batches with different schemas");
      }
      const auto& src = b.column(c).values;
      col.values.insert(col.values.end(), src.begin(), src.end());
    }
    columns.push_back(std::make_shared<const Column>(std::move(col)));
  }
  RecordBatch out = RecordBatch(schema);
  return total == 0 ? out : RecordBatch::FromColumns(std::move(columns), total);
}

}  // namespace featherpipe

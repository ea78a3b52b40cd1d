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
#include "featherpipe/io/data_io.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "featherpipe/core/coerce.h"
#include "featherpipe/core/error.h"
#include "featherpipe/core/json_codec.h"

namespace featherpipe {
namespace {

RecordBatch Build(const Schema& schema,
                  std::vector<std::vector<Value>> columns, size_t rows) {
  std::vector<ColumnPtr> cols;
  for (size_t c = 0; c < schema.size(); ++c) {
    cols.push_back(std::make_shared<const Column>(
        Column{schema.fields()[c], std::move(columns[c])}));
  }
  if (rows == 0) return RecordBatch(schema);
  return RecordBatch::FromColumns(std::move(cols), rows);
}

// Splits one csv record (RFC 4180 quoting). Returns false at end of input.
bool NextCsvRecord(std::istream& in, std::vector<std::string>* cells,
                   size_t* line) {
  cells->clear();
  std::string cell;
  bool quoted = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++*line;
        cell += ch;
      }
      continue;
    }
    if (ch == '"' && cell.empty()) {
      quoted = true;
    } else if (ch == ',') {
      cells->push_back(std::move(cell));
      cell.clear();
    } else if (ch == '\n') {
      ++*line;
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      cells->push_back(std::move(cell));
      return true;
    } else {
      cell += ch;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::kIo,
                "unterminated quoted csv cell near line " + std::to_string(*line));
  }
  if (!any) return false;
  if (!cell.empty() && cell.back() == '\r') cell.pop_back();
  cells->push_back(std::move(cell));
  return true;
}

}  // namespace

std::optional<DataFormat> ParseDataFormat(std::string_view name) {
  if (name == "jsonlines" || name == "jsonl") return DataFormat::kJsonLines;
  if (name == "csv") return DataFormat::kCsv;
  return std::nullopt;
}

DataFormat GuessDataFormat(std::string_view path) {
  return path.ends_with(".csv") ? DataFormat::kCsv : DataFormat::kJsonLines;
}

RecordBatch ReadJsonLines(std::istream& in, const Schema& schema) {
  std::vector<std::vector<Value>> columns(schema.size());
  std::string line;
  size_t rows = 0;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json doc;
    try {
      doc = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kIo,
                  "line " + std::to_string(line_no) + ": " + e.what(),
                  {.row = static_cast<int64_t>(rows)});
    }
    if (!doc.is_object()) {
      throw Error(ErrorCode::kIo,
                  "line " + std::to_string(line_no) + " is not a JSON object",
                  {.row = static_cast<int64_t>(rows)});
    }
    for (size_t c = 0; c < schema.size(); ++c) {
      const FieldSpec& f = schema.fields()[c];
      auto it = doc.find(f.name);
      try {
        columns[c].push_back(it == doc.end() ? Value::Null()
                                             : JsonToValue(*it, f));
      } catch (const Error& e) {
        throw e.WithContext({.row = static_cast<int64_t>(rows)});
      }
    }
    ++rows;
  }
  return Build(schema, std::move(columns), rows);
}

RecordBatch ReadCsv(std::istream& in, const Schema& schema,
                    const std::string& null_token) {
  for (const FieldSpec& f : schema.fields()) {
    if (f.shape.rank() != 0) {
      throw Error(ErrorCode::kIo,
                  "csv holds scalar columns only; use jsonlines for lists",
                  {.column = f.name});
    }
  }
  size_t line = 0;
  std::vector<std::string> header;
  if (!NextCsvRecord(in, &header, &line)) return RecordBatch(schema);
  // Schema column -> csv cell position.
  std::vector<std::optional<size_t>> where(schema.size());
  for (size_t i = 0; i < header.size(); ++i) {
    if (auto idx = schema.IndexOf(header[i])) where[*idx] = i;
  }
  std::vector<std::vector<Value>> columns(schema.size());
  std::vector<std::string> cells;
  size_t rows = 0;
  while (NextCsvRecord(in, &cells, &line)) {
    if (cells.size() == 1 && cells[0].empty()) continue;
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kIo,
                  "csv record has " + std::to_string(cells.size()) +
                      " cells, header has " + std::to_string(header.size()),
                  {.row = static_cast<int64_t>(rows)});
    }
    for (size_t c = 0; c < schema.size(); ++c) {
      const FieldSpec& f = schema.fields()[c];
      if (!where[c] || cells[*where[c]] == null_token) {
        columns[c].push_back(Value::Null());
        continue;
      }
      try {
        columns[c].push_back(Coerce(Value::String(cells[*where[c]]), f.dtype));
      } catch (const Error& e) {
        throw Error(ErrorCode::kRowValidation, e.detail(),
                    {.column = f.name, .row = static_cast<int64_t>(rows)});
      }
    }
    ++rows;
  }
  return Build(schema, std::move(columns), rows);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

RecordBatch ReadDataFile(const std::string& path, const Schema& schema,
                         const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  return options.format == DataFormat::kCsv
             ? ReadCsv(in, schema, options.null_token)
             : ReadJsonLines(in, schema);
}

void WriteJsonLines(std::ostream& out, const RecordBatch& batch,
                    std::span<const std::string> select) {
  std::vector<size_t> keep;
  if (select.empty()) {
    for (size_t c = 0; c < batch.num_columns(); ++c) keep.push_back(c);
  } else {
    for (const std::string& name : select) {
      auto idx = batch.schema().IndexOf(name);
      if (!idx) {
        throw Error(ErrorCode::kInvalidArgument, "no such column",
                    {.column = name});
      }
      keep.push_back(*idx);
    }
  }
  for (size_t r = 0; r < batch.num_rows(); ++r) {
    Json row = Json::object();
    for (size_t c : keep) {
      row[batch.column(c).field.name] = ValueToJson(batch.column(c).values[r]);
    }
    out << WriteCanonicalJson(row) << '\n';
  }
}

}  // namespace featherpipe

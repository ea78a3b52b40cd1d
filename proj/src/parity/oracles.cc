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
#include "featherpipe/parity/oracles.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace featherpipe {
namespace {

void CollectStrings(const Value& v, const std::optional<std::string>& mask,
                    std::map<std::string, long>& counts) {
  if (v.is_null()) return;
  if (v.is_list()) {
    for (const Value& item : v.AsList()) CollectStrings(item, mask, counts);
    return;
  }
  const std::string& s = v.AsString();
  if (mask && s == *mask) return;
  ++counts[s];
}

void CollectNumbers(const Value& v, std::optional<double> sentinel,
                    std::vector<double>& out) {
  if (v.is_null()) return;
  if (v.is_list()) {
    for (const Value& item : v.AsList()) CollectNumbers(item, sentinel, out);
    return;
  }
  const double x = v.is_int() ? static_cast<double>(v.AsInt()) : v.AsFloat();
  if (!std::isfinite(x)) return;
  if (sentinel && x == *sentinel) return;
  out.push_back(x);
}

// Kahan-Babuska summation in long double.
long double Sum(const std::vector<long double>& xs) {
  long double sum = 0, comp = 0;
  for (long double x : xs) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

std::vector<std::string> OracleVocabulary(std::span<const Value> cells,
                                          const std::string& order,
                                          const std::optional<std::string>& mask) {
  std::map<std::string, long> counts;
  for (const Value& c : cells) CollectStrings(c, mask, counts);
  std::vector<std::pair<std::string, long>> items(counts.begin(), counts.end());
  // std::map iterates in byte order already; a stable sort on count keeps it
  // as the tie-break.
  if (order == "frequencyDesc") {
    std::stable_sort(items.begin(), items.end(),
                     [](auto& a, auto& b) { return a.second > b.second; });
  } else if (order == "frequencyAsc") {
    std::stable_sort(items.begin(), items.end(),
                     [](auto& a, auto& b) { return a.second < b.second; });
  } else if (order == "alphabeticalDesc") {
    std::reverse(items.begin(), items.end());
  } else if (order != "alphabeticalAsc") {
    throw std::invalid_argument("unknown order " + order);
  }
  std::vector<std::string> labels;
  for (auto& [label, n] : items) labels.push_back(label);
  return labels;
}

OracleMomentsResult OracleMoments(std::span<const Value> cells, size_t width) {
  std::vector<std::vector<long double>> columns(width);
  OracleMomentsResult r;
  for (const Value& c : cells) {
    if (c.is_null()) continue;
    std::vector<long double> row;
    bool ok = true;
    if (c.is_list()) {
      for (const Value& v : c.AsList()) {
        if (v.is_null() || !std::isfinite(v.AsFloat())) {
          ok = false;
          break;
        }
        row.push_back(v.AsFloat());
      }
    } else if (std::isfinite(c.AsFloat())) {
      row.push_back(c.AsFloat());
    } else {
      ok = false;
    }
    if (!ok) continue;
    if (row.size() != width) throw std::invalid_argument("row width mismatch");
    for (size_t i = 0; i < width; ++i) columns[i].push_back(row[i]);
    ++r.rows;
  }
  for (const auto& col : columns) {
    const long double n = static_cast<long double>(col.size());
    const long double mean = Sum(col) / n;
    std::vector<long double> sq;
    sq.reserve(col.size());
    for (long double x : col) sq.push_back((x - mean) * (x - mean));
    r.mean.push_back(static_cast<double>(mean));
    r.stddev.push_back(static_cast<double>(std::sqrt(Sum(sq) / n)));
  }
  return r;
}

std::vector<double> OracleObserved(std::span<const Value> cells,
                                   std::optional<double> sentinel) {
  std::vector<double> out;
  for (const Value& c : cells) CollectNumbers(c, sentinel, out);
  return out;
}

double OracleMean(std::vector<double> values) {
  std::vector<long double> xs(values.begin(), values.end());
  const long double n = static_cast<long double>(xs.size());
  const long double first = Sum(xs) / n;
  // Second pass corrects the residual of the first.
  std::vector<long double> resid;
  for (long double x : xs) resid.push_back(x - first);
  return static_cast<double>(first + Sum(resid) / n);
}

double OracleMedian(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  const long double a = values[n / 2 - 1], b = values[n / 2];
  return static_cast<double>((a + b) / 2);
}

}  // namespace featherpipe

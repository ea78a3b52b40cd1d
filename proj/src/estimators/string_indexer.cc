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
#include "featherpipe/estimators/string_indexer.h"

#include <algorithm>

#include "featherpipe/core/error.h"
#include "featherpipe/core/murmur3.h"
#include "featherpipe/transforms/lifting.h"

namespace featherpipe {

std::string_view StringOrderName(StringOrder order) {
  switch (order) {
    case StringOrder::kFrequencyDesc:
      return "frequencyDesc";
    case StringOrder::kFrequencyAsc:
      return "frequencyAsc";
    case StringOrder::kAlphabeticalAsc:
      return "alphabeticalAsc";
    case StringOrder::kAlphabeticalDesc:
      return "alphabeticalDesc";
  }
  return "frequencyDesc";
}

std::optional<StringOrder> ParseStringOrder(std::string_view name) {
  if (name == "frequencyDesc") return StringOrder::kFrequencyDesc;
  if (name == "frequencyAsc") return StringOrder::kFrequencyAsc;
  if (name == "alphabeticalAsc") return StringOrder::kAlphabeticalAsc;
  if (name == "alphabeticalDesc") return StringOrder::kAlphabeticalDesc;
  return std::nullopt;
}

void FrequencyPartial::Add(std::string_view label) {
  if (mask_token_ && label == *mask_token_) return;
  auto it = counts_.find(std::string(label));
  if (it == counts_.end()) {
    counts_.emplace(std::string(label), 1);
  } else {
    ++it->second;
  }
}

void FrequencyPartial::AddValue(const Value& value) {
  if (value.is_null()) return;
  if (value.is_list()) {
    for (const Value& item : value.AsList()) AddValue(item);
    return;
  }
  Add(value.AsString());
}

void FrequencyPartial::Merge(const FrequencyPartial& other) {
  for (const auto& [label, n] : other.counts_) counts_[label] += n;
}

std::map<std::string, int64_t> FrequencyPartial::Sorted() const {
  return {counts_.begin(), counts_.end()};
}

std::vector<std::string> OrderLabels(
    const std::unordered_map<std::string, int64_t>& counts, StringOrder order) {
  std::vector<std::pair<std::string, int64_t>> items(counts.begin(),
                                                     counts.end());
  auto by_label = [](const auto& a, const auto& b) { return a.first < b.first; };
  switch (order) {
    case StringOrder::kFrequencyDesc:
      std::sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : by_label(a, b);
      });
      break;
    case StringOrder::kFrequencyAsc:
      std::sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : by_label(a, b);
      });
      break;
    case StringOrder::kAlphabeticalAsc:
      std::sort(items.begin(), items.end(), by_label);
      break;
    case StringOrder::kAlphabeticalDesc:
      std::sort(items.begin(), items.end(),
                [&](const auto& a, const auto& b) { return by_label(b, a); });
      break;
  }
  std::vector<std::string> labels;
  labels.reserve(items.size());
  for (auto& [label, n] : items) labels.push_back(std::move(label));
  return labels;
}

VocabSpec FinalizeVocab(const FrequencyPartial& partial, VocabSpec config) {
  if (partial.counts().empty()) {
    throw Error(ErrorCode::kEmptyVocabulary,
                "no non-null, non-mask value was observed");
  }
  config.labels = OrderLabels(partial.counts(), config.order);
  return config;
}

StringIndexer::StringIndexer(VocabSpec vocab) : vocab_(std::move(vocab)) {
  first_oov_ = vocab_.mask_token ? 1 : 0;
  const int64_t first_label = first_oov_ + vocab_.num_oov;
  index_.reserve(vocab_.labels.size());
  for (size_t i = 0; i < vocab_.labels.size(); ++i) {
    index_.emplace(vocab_.labels[i], first_label + static_cast<int64_t>(i));
  }
}

int64_t StringIndexer::Lookup(std::string_view s) const {
  if (vocab_.mask_token && s == *vocab_.mask_token) return 0;
  auto it = index_.find(std::string(s));
  if (it != index_.end()) return it->second;
  return first_oov_ +
         FloorMod(Murmur3_32Signed(s, kHashSeed), vocab_.num_oov);
}

Value StringIndexer::Apply(const Value& value) const {
  return LiftUnary(value, [&](const Value& leaf) {
    return Value::Int(Lookup(leaf.AsString()));
  });
}

int64_t StringIndexer::max_index() const {
  return first_oov_ + vocab_.num_oov +
         static_cast<int64_t>(vocab_.labels.size()) - 1;
}

OneHotEncoder::OneHotEncoder(VocabSpec vocab, bool drop_unseen)
    : indexer_(std::move(vocab)), drop_unseen_(drop_unseen) {
  const auto labels = static_cast<int64_t>(indexer_.vocab().labels.size());
  width_ = drop_unseen_ ? labels : indexer_.vocab().num_oov + labels;
}

std::optional<int64_t> OneHotEncoder::HotPosition(std::string_view s) const {
  const VocabSpec& v = indexer_.vocab();
  if (v.mask_token && s == *v.mask_token) return std::nullopt;
  // Shift the string-index layout so the first OOV slot is position 0.
  const int64_t position = indexer_.Lookup(s) - (v.mask_token ? 1 : 0);
  if (!drop_unseen_) return position;
  if (position < v.num_oov) return std::nullopt;
  return position - v.num_oov;
}

Value OneHotEncoder::Apply(const Value& value) const {
  return LiftUnary(value, [&](const Value& leaf) {
    Value::List out(static_cast<size_t>(width_), Value::Float(0.0));
    if (auto pos = HotPosition(leaf.AsString())) {
      out[static_cast<size_t>(*pos)] = Value::Float(1.0);
    }
    return Value::MakeList(std::move(out));
  });
}

}  // namespace featherpipe

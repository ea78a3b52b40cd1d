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
#ifndef FEATHERPIPE_ESTIMATORS_STRING_INDEXER_H_
#define FEATHERPIPE_ESTIMATORS_STRING_INDEXER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "featherpipe/core/value.h"

namespace featherpipe {

enum class StringOrder {
  kFrequencyDesc,
  kFrequencyAsc,
  kAlphabeticalAsc,
  kAlphabeticalDesc,
};

std::string_view StringOrderName(StringOrder order);
std::optional<StringOrder> ParseStringOrder(std::string_view name);

// Vocabulary configuration plus, once fitted, the ordered labels.
//
// Index layout:
//   with a mask token:    mask -> 0, OOV -> [1, numOOV], labels from numOOV+1
//   without a mask token: OOV -> [0, numOOV), labels from numOOV
// An unseen string takes OOV slot floorMod(murmur3_32(s, 42), numOOV).
struct VocabSpec {
  StringOrder order = StringOrder::kFrequencyDesc;
  int64_t num_oov = 1;
  std::optional<std::string> mask_token;
  std::vector<std::string> labels;

  friend bool operator==(const VocabSpec&, const VocabSpec&) = default;
};

// Label -> occurrence count. Every string leaf counts once; nulls and the
// mask token are skipped.
class FrequencyPartial {
 public:
  FrequencyPartial() = default;
  explicit FrequencyPartial(std::optional<std::string> mask_token)
      : mask_token_(std::move(mask_token)) {}

  void Add(std::string_view label);
  // Walks every string leaf of `value`.
  void AddValue(const Value& value);
  void Merge(const FrequencyPartial& other);

  const std::unordered_map<std::string, int64_t>& counts() const {
    return counts_;
  }
  // Counts in label order, for comparisons and tests.
  std::map<std::string, int64_t> Sorted() const;

 private:
  std::optional<std::string> mask_token_;
  std::unordered_map<std::string, int64_t> counts_;
};

// Orders observed labels. Frequency ties go to the smaller label by byte
// (code point) order.
std::vector<std::string> OrderLabels(
    const std::unordered_map<std::string, int64_t>& counts, StringOrder order);

// Returns `config` with labels filled in. Throws Error(kEmptyVocabulary)
// when nothing was observed.
VocabSpec FinalizeVocab(const FrequencyPartial& partial, VocabSpec config);

// Fitted lookup: label -> index per the layout above.
class StringIndexer {
 public:
  explicit StringIndexer(VocabSpec vocab);

  int64_t Lookup(std::string_view s) const;
  // Element-wise over lists; null stays null.
  Value Apply(const Value& value) const;

  const VocabSpec& vocab() const { return vocab_; }
  // Largest index Lookup can return.
  int64_t max_index() const;

 private:
  VocabSpec vocab_;
  std::unordered_map<std::string, int64_t> index_;
  int64_t first_oov_;
};

// One-hot over a fitted vocabulary. With drop_unseen the vector has one
// slot per label and unseen values encode as all zeros; otherwise OOV slots
// precede the labels. The mask token always encodes as all zeros.
class OneHotEncoder {
 public:
  OneHotEncoder(VocabSpec vocab, bool drop_unseen);

  int64_t width() const { return width_; }
  // Position of the hot slot, or nullopt for an all-zeros vector.
  std::optional<int64_t> HotPosition(std::string_view s) const;
  // Each string leaf becomes a float64 vector of width().
  Value Apply(const Value& value) const;

 private:
  StringIndexer indexer_;
  bool drop_unseen_;
  int64_t width_;
};

}  // namespace featherpipe

#endif  // FEATHERPIPE_ESTIMATORS_STRING_INDEXER_H_

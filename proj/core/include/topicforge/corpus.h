// Copyright 2026 The TopicForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPICFORGE_CORPUS_H_
#define TOPICFORGE_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicforge/textprep.h"

namespace topicforge {

using TokenId = std::int32_t;

struct BowEntry {
  TokenId id = 0;
  std::int32_t count = 0;

  friend bool operator==(const BowEntry&, const BowEntry&) = default;
};

// Sparse term counts, strictly increasing by id, every count >= 1.
using BowDoc = std::vector<BowEntry>;

struct TfIdfEntry {
  TokenId id = 0;
  double weight = 0.0;
};

using TfIdfDoc = std::vector<TfIdfEntry>;

// Bidirectional term <-> dense id map with document frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Assembles a vocabulary from parallel arrays indexed by id.
  static Vocabulary FromParts(std::vector<std::string> tokens,
                              std::vector<std::int64_t> doc_freq,
                              std::int64_t num_docs);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  std::int64_t num_docs() const { return num_docs_; }

  std::optional<TokenId> Find(std::string_view token) const;
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  std::int64_t doc_freq(TokenId id) const { return doc_freq_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // {"num_docs": N, "terms": [{"token", "id", "df"}, ...]} sorted by id.
  void WriteJson(std::ostream& out) const;
  static Vocabulary ReadJson(std::istream& in);

 private:
  friend Vocabulary BuildVocabulary(std::span<const TermList> docs);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> ids_;
  std::vector<std::int64_t> doc_freq_;
  std::int64_t num_docs_ = 0;
};

struct VocabFilter {
  std::int64_t no_below = 5;
  double no_above = 0.5;
  std::size_t keep_n = 100000;
};

// Ids follow first appearance; df counts documents, not occurrences.
Vocabulary BuildVocabulary(std::span<const TermList> docs);

// Drops terms with df < no_below or df > no_above * num_docs, then keeps the
// keep_n most frequent (ties by lower old id). Survivors keep their relative
// order under new dense ids.
Vocabulary FilterVocabulary(const Vocabulary& vocab, const VocabFilter& filter);

// Out-of-vocabulary terms are dropped.
BowDoc DocToBow(const Vocabulary& vocab, std::span<const std::string> terms);

// ln(num_docs / df). Throws when either is zero.
double Idf(const Vocabulary& vocab, TokenId id);

// weight = raw count * idf.
TfIdfDoc TfIdfTransform(const Vocabulary& vocab, const BowDoc& doc);

// Integer multiplicities for the Gibbs sampler: each weight rounded to the
// nearest integer, but never below 1.
BowDoc RoundTfIdf(const TfIdfDoc& doc);

// Documents ready for topic modeling over ids [0, vocab_size).
struct Corpus {
  std::vector<BowDoc> docs;
  std::size_t vocab_size = 0;

  std::int64_t TotalTokens() const;
  // Throws unless every entry is valid and sorted against vocab_size.
  void Validate() const;
};

std::int64_t DocLength(const BowDoc& doc);

}  // namespace topicforge

#endif  // TOPICFORGE_CORPUS_H_

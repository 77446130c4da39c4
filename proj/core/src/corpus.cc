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

#include "topicforge/corpus.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "json.hpp"
#include "topicforge/error.h"

namespace topicforge {

Vocabulary Vocabulary::FromParts(std::vector<std::string> tokens,
                                 std::vector<std::int64_t> doc_freq,
                                 std::int64_t num_docs) {
  if (tokens.size() != doc_freq.size()) {
    throw Error("Vocabulary: tokens and doc_freq differ in length");
  }
  if (num_docs < 0) throw Error("Vocabulary: negative num_docs");
  Vocabulary v;
  v.num_docs_ = num_docs;
  for (std::size_t id = 0; id < tokens.size(); ++id) {
    if (doc_freq[id] < 0 || doc_freq[id] > num_docs) {
      throw Error("Vocabulary: doc_freq of '" + tokens[id] +
                  "' outside [0, num_docs]");
    }
    if (!v.ids_.emplace(tokens[id], static_cast<TokenId>(id)).second) {
      throw Error("Vocabulary: duplicate token '" + tokens[id] + "'");
    }
  }
  v.tokens_ = std::move(tokens);
  v.doc_freq_ = std::move(doc_freq);
  return v;
}

std::optional<TokenId> Vocabulary::Find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::WriteJson(std::ostream& out) const {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (std::size_t id = 0; id < tokens_.size(); ++id) {
    terms.push_back({{"token", tokens_[id]},
                     {"id", static_cast<std::int64_t>(id)},
                     {"df", doc_freq_[id]}});
  }
  nlohmann::ordered_json j;
  j["num_docs"] = num_docs_;
  j["terms"] = std::move(terms);
  out << j.dump(1) << '\n';
}

Vocabulary Vocabulary::ReadJson(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    const auto& terms = j.at("terms");
    std::vector<std::string> tokens(terms.size());
    std::vector<std::int64_t> df(terms.size());
    std::vector<bool> seen(terms.size(), false);
    for (const auto& t : terms) {
      const auto id = t.at("id").get<std::int64_t>();
      if (id < 0 || id >= static_cast<std::int64_t>(terms.size()) || seen[id]) {
        throw Error("vocabulary JSON: ids are not dense 0..V-1");
      }
      seen[id] = true;
      tokens[id] = t.at("token").get<std::string>();
      df[id] = t.at("df").get<std::int64_t>();
    }
    return FromParts(std::move(tokens), std::move(df),
                     j.at("num_docs").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("vocabulary JSON: ") + e.what());
  }
}

Vocabulary BuildVocabulary(std::span<const TermList> docs) {
  Vocabulary v;
  v.num_docs_ = static_cast<std::int64_t>(docs.size());
  std::unordered_set<TokenId> seen_in_doc;
  for (const TermList& doc : docs) {
    seen_in_doc.clear();
    for (const std::string& term : doc) {
      auto [it, inserted] =
          v.ids_.emplace(term, static_cast<TokenId>(v.tokens_.size()));
      if (inserted) {
        v.tokens_.push_back(term);
        v.doc_freq_.push_back(0);
      }
      if (seen_in_doc.insert(it->second).second) ++v.doc_freq_[it->second];
    }
  }
  return v;
}

Vocabulary FilterVocabulary(const Vocabulary& vocab, const VocabFilter& filter) {
  if (!(filter.no_above > 0.0 && filter.no_above <= 1.0)) {
    throw Error("vocabulary filter: no_above must lie in (0, 1]");
  }
  if (filter.no_below < 0) throw Error("vocabulary filter: negative no_below");
  const double ceiling = filter.no_above * static_cast<double>(vocab.num_docs());
  std::vector<TokenId> kept;
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    const auto df = vocab.doc_freq(static_cast<TokenId>(id));
    if (df < filter.no_below || static_cast<double>(df) > ceiling) continue;
    kept.push_back(static_cast<TokenId>(id));
  }
  if (kept.size() > filter.keep_n) {
    std::stable_sort(kept.begin(), kept.end(), [&](TokenId a, TokenId b) {
      return vocab.doc_freq(a) > vocab.doc_freq(b);
    });
    kept.resize(filter.keep_n);
    std::sort(kept.begin(), kept.end());
  }
  std::vector<std::string> tokens;
  std::vector<std::int64_t> df;
  tokens.reserve(kept.size());
  df.reserve(kept.size());
  for (TokenId id : kept) {
    tokens.push_back(vocab.token(id));
    df.push_back(vocab.doc_freq(id));
  }
  return Vocabulary::FromParts(std::move(tokens), std::move(df),
                               vocab.num_docs());
}

BowDoc DocToBow(const Vocabulary& vocab, std::span<const std::string> terms) {
  std::map<TokenId, std::int32_t> counts;
  for (const std::string& term : terms) {
    if (auto id = vocab.Find(term)) ++counts[*id];
  }
  BowDoc doc;
  doc.reserve(counts.size());
  for (const auto& [id, count] : counts) doc.push_back({id, count});
  return doc;
}

double Idf(const Vocabulary& vocab, TokenId id) {
  if (id < 0 || static_cast<std::size_t>(id) >= vocab.size()) {
    throw Error("idf: token id " + std::to_string(id) + " out of range");
  }
  const auto df = vocab.doc_freq(id);
  if (df == 0 || vocab.num_docs() == 0) {
    throw Error("idf undefined for '" + vocab.token(id) +
                "': zero document frequency");
  }
  return std::log(static_cast<double>(vocab.num_docs()) /
                  static_cast<double>(df));
}

TfIdfDoc TfIdfTransform(const Vocabulary& vocab, const BowDoc& doc) {
  TfIdfDoc out;
  out.reserve(doc.size());
  for (const BowEntry& e : doc) {
    out.push_back({e.id, static_cast<double>(e.count) * Idf(vocab, e.id)});
  }
  return out;
}

BowDoc RoundTfIdf(const TfIdfDoc& doc) {
  BowDoc out;
  out.reserve(doc.size());
  for (const TfIdfEntry& e : doc) {
    const auto rounded = static_cast<std::int32_t>(std::lround(e.weight));
    out.push_back({e.id, std::max<std::int32_t>(1, rounded)});
  }
  return out;
}

std::int64_t DocLength(const BowDoc& doc) {
  std::int64_t n = 0;
  for (const BowEntry& e : doc) n += e.count;
  return n;
}

std::int64_t Corpus::TotalTokens() const {
  std::int64_t n = 0;
  for (const BowDoc& d : docs) n += DocLength(d);
  return n;
}

void Corpus::Validate() const {
  for (std::size_t d = 0; d < docs.size(); ++d) {
    TokenId previous = -1;
    for (const BowEntry& e : docs[d]) {
      if (e.id <= previous || static_cast<std::size_t>(e.id) >= vocab_size ||
          e.count < 1) {
        throw Error("corpus document " + std::to_string(d) +
                    " has an invalid or unsorted entry");
      }
      previous = e.id;
    }
  }
}

}  // namespace topicforge

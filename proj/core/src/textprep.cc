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

#include "topicforge/textprep.h"

#include <algorithm>
#include <istream>
#include <sstream>

#include "bundled_data.h"
#include "topicforge/error.h"
#include "utf8.h"

namespace topicforge {
namespace {

using internal::DecodeUtf8;
using internal::EncodeUtf8;

std::string_view TrimLineEnd(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
    line.remove_suffix(1);
  }
  return line;
}

bool AllLetters(std::string_view token) {
  const std::u32string cps = DecodeUtf8(token);
  if (cps.empty()) return false;
  return std::all_of(cps.begin(), cps.end(), internal::IsLetter);
}

// Stemming is not idempotent on its own (agreed -> agre -> agr); iterate the
// lookup+stem map until it stops changing. Every rewrite either shortens the
// word or replaces a trailing y, so a handful of rounds always suffices.
constexpr int kMaxLemmaStemRounds = 32;

}  // namespace

TokenList Tokenize(std::string_view text) {
  const std::u32string cps = DecodeUtf8(text);
  TokenList tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    const char32_t c = cps[i];
    if (internal::IsSpace(c)) {
      ++i;
      continue;
    }
    const bool word = internal::IsWordChar(c);
    std::size_t end = i + 1;
    while (end < cps.size()) {
      const char32_t next = cps[end];
      if (word ? !internal::IsWordChar(next)
               : (internal::IsWordChar(next) || internal::IsSpace(next))) {
        break;
      }
      ++end;
    }
    tokens.push_back(EncodeUtf8(std::u32string_view(cps).substr(i, end - i)));
    i = end;
  }
  return tokens;
}

TokenList StripNonAlpha(TokenList tokens) {
  std::erase_if(tokens, [](const std::string& t) { return !AllLetters(t); });
  return tokens;
}

std::string Lowercase(std::string_view token) {
  std::u32string cps = DecodeUtf8(token);
  for (char32_t& c : cps) c = internal::FoldCase(c);
  return EncodeUtf8(cps);
}

TokenList Lowercase(TokenList tokens) {
  for (std::string& t : tokens) t = Lowercase(t);
  return tokens;
}

TokenList RemoveStopwords(TokenList tokens, const StopwordSet& stopwords) {
  std::erase_if(tokens,
                [&](const std::string& t) { return stopwords.contains(t); });
  return tokens;
}

TokenList RemoveStopwords(TokenList tokens) {
  return RemoveStopwords(std::move(tokens), DefaultStopwords());
}

TokenList FilterLength(TokenList tokens, std::size_t min_length,
                       std::size_t max_length) {
  std::erase_if(tokens, [&](const std::string& t) {
    const std::size_t n = internal::CodePointCount(t);
    return n < min_length || n > max_length;
  });
  return tokens;
}

std::string LemmaStem(std::string_view token, const LemmaTable& lemmas) {
  std::string current(token);
  for (int round = 0; round < kMaxLemmaStemRounds; ++round) {
    auto it = lemmas.find(current);
    std::string next = PorterStem(it == lemmas.end() ? current : it->second);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

std::string LemmaStem(std::string_view token) {
  return LemmaStem(token, DefaultLemmas());
}

StopwordSet ParseStopwords(std::istream& in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view word = TrimLineEnd(line);
    if (!word.empty()) words.emplace(word);
  }
  return words;
}

LemmaTable ParseLemmaTable(std::istream& in) {
  LemmaTable table;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view row = TrimLineEnd(line);
    if (row.empty()) continue;
    const auto tab = row.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == row.size() ||
        row.find('\t', tab + 1) != std::string_view::npos) {
      throw Error("lemma table line " + std::to_string(line_number) +
                  ": expected surface<TAB>lemma");
    }
    table.emplace(std::string(row.substr(0, tab)),
                  std::string(row.substr(tab + 1)));
  }
  return table;
}

const StopwordSet& DefaultStopwords() {
  static const StopwordSet* const words = [] {
    std::istringstream in{std::string(internal::BundledStopwords())};
    return new StopwordSet(ParseStopwords(in));
  }();
  return *words;
}

const LemmaTable& DefaultLemmas() {
  static const LemmaTable* const table = [] {
    std::istringstream in{std::string(internal::BundledLemmaTable())};
    return new LemmaTable(ParseLemmaTable(in));
  }();
  return *table;
}

Preprocessor::Preprocessor()
    : stopwords_(DefaultStopwords()), lemmas_(DefaultLemmas()) {}

Preprocessor::Preprocessor(StopwordSet stopwords, LemmaTable lemmas)
    : stopwords_(std::move(stopwords)), lemmas_(std::move(lemmas)) {}

bool Preprocessor::IsValidTerm(std::string_view term) const {
  const std::u32string cps = DecodeUtf8(term);
  if (cps.size() < kMinTermLength || cps.size() > kMaxTermLength) return false;
  for (char32_t c : cps) {
    if (!internal::IsLetter(c) || internal::FoldCase(c) != c) return false;
  }
  return !stopwords_.contains(std::string(term));
}

TermList Preprocessor::operator()(std::string_view text) const {
  TokenList tokens = FilterLength(RemoveStopwords(
      Lowercase(StripNonAlpha(Tokenize(text))), stopwords_));
  TermList terms;
  terms.reserve(tokens.size());
  for (const std::string& token : tokens) {
    std::string term = LemmaStem(token, lemmas_);
    if (IsValidTerm(term)) terms.push_back(std::move(term));
  }
  return terms;
}

TermList Preprocess(std::string_view text) {
  static const Preprocessor* const preprocessor = new Preprocessor();
  return (*preprocessor)(text);
}

}  // namespace topicforge

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

#ifndef TOPICFORGE_TEXTPREP_H_
#define TOPICFORGE_TEXTPREP_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace topicforge {

// Ordered tokens as produced by Tokenize; never contains empty strings.
using TokenList = std::vector<std::string>;
// Normalized terms: lowercase, alphabetic, 2..14 characters, no stopwords.
using TermList = std::vector<std::string>;

using StopwordSet = std::unordered_set<std::string>;
using LemmaTable = std::unordered_map<std::string, std::string>;

inline constexpr std::size_t kMinTermLength = 2;
inline constexpr std::size_t kMaxTermLength = 14;

// Splits text into maximal runs matching `\w+|[^\w\s]+`, left to right.
TokenList Tokenize(std::string_view text);

// Keeps tokens made only of Unicode letters.
TokenList StripNonAlpha(TokenList tokens);

// Unicode simple case folding of each token.
TokenList Lowercase(TokenList tokens);
std::string Lowercase(std::string_view token);

TokenList RemoveStopwords(TokenList tokens, const StopwordSet& stopwords);
TokenList RemoveStopwords(TokenList tokens);

// Keeps tokens whose length in code points lies in [min_length, max_length].
TokenList FilterLength(TokenList tokens, std::size_t min_length = kMinTermLength,
                       std::size_t max_length = kMaxTermLength);

// Porter (1980) suffix stripping for lowercase ASCII words. Words containing
// anything outside a-z are returned unchanged.
std::string PorterStem(std::string_view word);

// Irregular-form lookup followed by stemming, iterated to a fixed point so
// that LemmaStem(LemmaStem(t)) == LemmaStem(t).
std::string LemmaStem(std::string_view token, const LemmaTable& lemmas);
std::string LemmaStem(std::string_view token);

// One token per line, UTF-8, no header. Blank lines are ignored.
StopwordSet ParseStopwords(std::istream& in);
// `surface<TAB>lemma` per line, UTF-8.
LemmaTable ParseLemmaTable(std::istream& in);

// The word lists compiled into the library.
const StopwordSet& DefaultStopwords();
const LemmaTable& DefaultLemmas();

// Full normalization pipeline. Immutable after construction; safe to share
// across threads.
class Preprocessor {
 public:
  Preprocessor();
  Preprocessor(StopwordSet stopwords, LemmaTable lemmas);

  // tokenize -> strip non-alpha -> lowercase -> stopwords -> length ->
  // lemma/stem. A stem that lands on a stopword or outside the length bounds
  // is dropped so the output always satisfies the TermList contract.
  TermList operator()(std::string_view text) const;

  bool IsValidTerm(std::string_view term) const;

  const StopwordSet& stopwords() const { return stopwords_; }
  const LemmaTable& lemmas() const { return lemmas_; }

 private:
  StopwordSet stopwords_;
  LemmaTable lemmas_;
};

// Preprocessor with the bundled lists.
TermList Preprocess(std::string_view text);

}  // namespace topicforge

#endif  // TOPICFORGE_TEXTPREP_H_

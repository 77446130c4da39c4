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

#ifndef TOPICFORGE_INGEST_H_
#define TOPICFORGE_INGEST_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "topicforge/diagnostics.h"
#include "topicforge/error.h"
#include "topicforge/random.h"
#include "topicforge/textprep.h"

namespace topicforge {

struct TrollRecord {
  std::string content;
  std::string language;
  std::string account_category;
  std::string publish_date;  // as it appears in the file
};

struct LabeledDoc {
  TermList terms;
  double y = 0.0;
};

enum class Polarity { kNegative = 0, kPositive = 1 };

std::string_view PolarityName(Polarity p);

struct SentimentRecord {
  Polarity polarity = Polarity::kNegative;
  std::string text;
};

struct CivilTime {
  int year = 0;
  int month = 0;
  int day = 0;
  int hour = 0;
  int minute = 0;
  int second = 0;
};

// Accepts `M/D/YYYY H:MM` and ISO-8601 `YYYY-MM-DD[( |T)HH:MM[:SS]]`.
std::optional<CivilTime> ParsePublishDate(std::string_view text);

// Requires header columns content, language, account_category and
// publish_date (any order, extra columns ignored). Rows with too few fields
// are skipped and tallied in `diagnostics` with their line numbers.
std::vector<TrollRecord> ReadTrollCsv(std::istream& in,
                                      Diagnostics* diagnostics = nullptr);
std::vector<TrollRecord> LoadTrollCsv(const std::filesystem::path& path,
                                      Diagnostics* diagnostics = nullptr);

// English rows from the LeftTroll and RightTroll categories, in input order.
std::vector<TrollRecord> FilterRecords(std::span<const TrollRecord> records);

// LeftTroll -> -1, RightTroll -> +1.
double LabelOf(std::string_view category);

// Rows published in `year`; unparseable dates are skipped and tallied.
std::vector<TrollRecord> SliceByYear(std::span<const TrollRecord> records,
                                     int year,
                                     Diagnostics* diagnostics = nullptr);

// Preprocesses content and attaches labels. Records whose content has no
// terms left are dropped and tallied.
std::vector<LabeledDoc> LabelRecords(std::span<const TrollRecord> records,
                                     const Preprocessor& preprocess,
                                     Diagnostics* diagnostics = nullptr);

// Seeded uniform shuffle, then the first round(train_frac * n) items train.
template <typename T>
std::pair<std::vector<T>, std::vector<T>> SplitTrainTest(std::vector<T> items,
                                                         double train_frac,
                                                         std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw Error("train fraction must lie strictly between 0 and 1");
  }
  Rng rng(seed);
  rng.Shuffle(items);
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_frac * static_cast<double>(items.size())));
  std::vector<T> test(std::make_move_iterator(items.begin() + n_train),
                      std::make_move_iterator(items.end()));
  items.resize(n_train);
  return {std::move(items), std::move(test)};
}

// Headerless 6-column file: polarity (0 or 4), id, date, query, user, text.
// Draws round(fraction * n_c) rows per class c without replacement; the
// result keeps file order.
std::vector<SentimentRecord> ReadSentimentCsv(std::istream& in, double fraction,
                                              std::uint64_t seed,
                                              Diagnostics* diagnostics = nullptr);
std::vector<SentimentRecord> LoadSentimentCsv(const std::filesystem::path& path,
                                              double fraction, std::uint64_t seed,
                                              Diagnostics* diagnostics = nullptr);

}  // namespace topicforge

#endif  // TOPICFORGE_INGEST_H_

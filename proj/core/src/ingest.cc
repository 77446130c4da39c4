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

#include "topicforge/ingest.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>

#include "topicforge/csv.h"

namespace topicforge {
namespace {

// Parses the whole of `text` as a non-negative decimal of `min_digits` to
// `max_digits` digits.
std::optional<int> ParseNumber(std::string_view text, std::size_t min_digits,
                               std::size_t max_digits) {
  if (text.size() < min_digits || text.size() > max_digits) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool InRange(const CivilTime& t) {
  return t.month >= 1 && t.month <= 12 && t.day >= 1 && t.day <= 31 &&
         t.hour >= 0 && t.hour <= 23 && t.minute >= 0 && t.minute <= 59 &&
         t.second >= 0 && t.second <= 60;
}

std::vector<std::string_view> SplitOn(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

// `H:MM` or `HH:MM[:SS]`.
bool ParseClock(std::string_view text, CivilTime& t) {
  const auto parts = SplitOn(text, ':');
  if (parts.size() < 2 || parts.size() > 3) return false;
  auto hour = ParseNumber(parts[0], 1, 2);
  auto minute = ParseNumber(parts[1], 2, 2);
  if (!hour || !minute) return false;
  t.hour = *hour;
  t.minute = *minute;
  if (parts.size() == 3) {
    // Fractional seconds and a trailing zone designator are tolerated.
    std::string_view sec = parts[2].substr(0, 2);
    auto second = ParseNumber(sec, 2, 2);
    if (!second) return false;
    t.second = *second;
  }
  return true;
}

std::optional<CivilTime> ParseUsDate(std::string_view text) {
  const auto space = text.find(' ');
  const auto date_parts = SplitOn(text.substr(0, space), '/');
  if (date_parts.size() != 3) return std::nullopt;
  auto month = ParseNumber(date_parts[0], 1, 2);
  auto day = ParseNumber(date_parts[1], 1, 2);
  auto year = ParseNumber(date_parts[2], 4, 4);
  if (!month || !day || !year) return std::nullopt;
  CivilTime t{*year, *month, *day};
  if (space != std::string_view::npos && !ParseClock(text.substr(space + 1), t)) {
    return std::nullopt;
  }
  return t;
}

std::optional<CivilTime> ParseIsoDate(std::string_view text) {
  const auto sep = text.find_first_of(" T");
  const auto date_parts = SplitOn(text.substr(0, sep), '-');
  if (date_parts.size() != 3) return std::nullopt;
  auto year = ParseNumber(date_parts[0], 4, 4);
  auto month = ParseNumber(date_parts[1], 2, 2);
  auto day = ParseNumber(date_parts[2], 2, 2);
  if (!month || !day || !year) return std::nullopt;
  CivilTime t{*year, *month, *day};
  if (sep != std::string_view::npos) {
    std::string_view clock = text.substr(sep + 1);
    if (!clock.empty() && clock.back() == 'Z') clock.remove_suffix(1);
    const auto zone = clock.find_first_of("+-", 5);
    if (zone != std::string_view::npos) clock = clock.substr(0, zone);
    if (!ParseClock(clock, t)) return std::nullopt;
  }
  return t;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::string_view PolarityName(Polarity p) {
  return p == Polarity::kPositive ? "positive" : "negative";
}

std::optional<CivilTime> ParsePublishDate(std::string_view text) {
  text = Trim(text);
  std::optional<CivilTime> t;
  if (text.find('/') != std::string_view::npos) {
    t = ParseUsDate(text);
  } else {
    t = ParseIsoDate(text);
  }
  if (t && !InRange(*t)) return std::nullopt;
  return t;
}

std::vector<TrollRecord> ReadTrollCsv(std::istream& in,
                                      Diagnostics* diagnostics) {
  CsvReader reader(in);
  auto header = reader.Next();
  if (!header) throw Error("troll CSV: missing header row");
  if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF")) {
    header->front().erase(0, 3);
  }
  constexpr std::array<std::string_view, 4> kRequired = {
      "content", "language", "account_category", "publish_date"};
  std::array<std::size_t, 4> column{};
  for (std::size_t r = 0; r < kRequired.size(); ++r) {
    auto it = std::find(header->begin(), header->end(), kRequired[r]);
    if (it == header->end()) {
      throw Error("troll CSV: missing column '" + std::string(kRequired[r]) + "'");
    }
    column[r] = static_cast<std::size_t>(it - header->begin());
  }
  const std::size_t needed = *std::max_element(column.begin(), column.end()) + 1;

  std::vector<TrollRecord> records;
  while (auto row = reader.Next()) {
    if (row->size() == 1 && row->front().empty()) continue;  // blank line
    if (row->size() < needed) {
      if (diagnostics) {
        diagnostics->Skip("missing columns at line " +
                          std::to_string(reader.record_line()));
      }
      continue;
    }
    records.push_back({std::move((*row)[column[0]]), std::move((*row)[column[1]]),
                       std::move((*row)[column[2]]),
                       std::move((*row)[column[3]])});
  }
  return records;
}

std::vector<TrollRecord> LoadTrollCsv(const std::filesystem::path& path,
                                      Diagnostics* diagnostics) {
  std::ifstream in = OpenOrThrow(path);
  return ReadTrollCsv(in, diagnostics);
}

std::vector<TrollRecord> FilterRecords(std::span<const TrollRecord> records) {
  std::vector<TrollRecord> out;
  for (const TrollRecord& r : records) {
    if (r.language == "English" &&
        (r.account_category == "RightTroll" || r.account_category == "LeftTroll")) {
      out.push_back(r);
    }
  }
  return out;
}

double LabelOf(std::string_view category) {
  if (category == "LeftTroll") return -1.0;
  if (category == "RightTroll") return 1.0;
  throw Error("no label for account category '" + std::string(category) + "'");
}

std::vector<TrollRecord> SliceByYear(std::span<const TrollRecord> records,
                                     int year, Diagnostics* diagnostics) {
  std::vector<TrollRecord> out;
  for (const TrollRecord& r : records) {
    auto t = ParsePublishDate(r.publish_date);
    if (!t) {
      if (diagnostics) diagnostics->Skip("unparseable publish_date");
      continue;
    }
    if (t->year == year) out.push_back(r);
  }
  return out;
}

std::vector<LabeledDoc> LabelRecords(std::span<const TrollRecord> records,
                                     const Preprocessor& preprocess,
                                     Diagnostics* diagnostics) {
  std::vector<LabeledDoc> out;
  out.reserve(records.size());
  for (const TrollRecord& r : records) {
    const double y = LabelOf(r.account_category);
    TermList terms = preprocess(r.content);
    if (terms.empty()) {
      if (diagnostics) diagnostics->Skip("empty after preprocessing");
      continue;
    }
    out.push_back({std::move(terms), y});
  }
  return out;
}

std::vector<SentimentRecord> ReadSentimentCsv(std::istream& in, double fraction,
                                              std::uint64_t seed,
                                              Diagnostics* diagnostics) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error("sentiment sample fraction must lie in (0, 1]");
  }
  CsvReader reader(in);
  std::vector<SentimentRecord> all;
  while (auto row = reader.Next()) {
    if (row->size() == 1 && row->front().empty()) continue;
    if (row->size() != 6) {
      if (diagnostics) diagnostics->Skip("expected 6 columns");
      continue;
    }
    const std::string_view polarity = Trim((*row)[0]);
    Polarity p;
    if (polarity == "0") {
      p = Polarity::kNegative;
    } else if (polarity == "4") {
      p = Polarity::kPositive;
    } else {
      if (diagnostics) diagnostics->Skip("polarity not in {0,4}");
      continue;
    }
    all.push_back({p, std::move((*row)[5])});
  }

  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < all.size(); ++i) {
    by_class[static_cast<int>(all[i].polarity)].push_back(i);
  }
  Rng rng(seed);
  std::vector<std::size_t> chosen;
  for (auto& indices : by_class) {
    const auto take = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(indices.size())));
    rng.Shuffle(indices);
    chosen.insert(chosen.end(), indices.begin(), indices.begin() + take);
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<SentimentRecord> out;
  out.reserve(chosen.size());
  for (std::size_t i : chosen) out.push_back(std::move(all[i]));
  return out;
}

std::vector<SentimentRecord> LoadSentimentCsv(const std::filesystem::path& path,
                                              double fraction, std::uint64_t seed,
                                              Diagnostics* diagnostics) {
  std::ifstream in = OpenOrThrow(path);
  return ReadSentimentCsv(in, fraction, seed, diagnostics);
}

}  // namespace topicforge

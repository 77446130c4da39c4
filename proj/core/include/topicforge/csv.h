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

#ifndef TOPICFORGE_CSV_H_
#define TOPICFORGE_CSV_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace topicforge {

using CsvRow = std::vector<std::string>;

// Streaming RFC-4180 reader: comma separated, double-quote quoting with ""
// escapes, quoted fields may span lines, CRLF or LF record ends.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. Throws Error on an unterminated
  // quote or stray characters after a closing quote.
  std::optional<CsvRow> Next();

  // 1-based line on which the most recently returned record started.
  std::int64_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::int64_t line_ = 1;
  std::int64_t record_line_ = 0;
};

}  // namespace topicforge

#endif  // TOPICFORGE_CSV_H_

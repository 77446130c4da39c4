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

#include "topicforge/csv.h"

#include <istream>

#include "topicforge/error.h"

namespace topicforge {

std::optional<CsvRow> CsvReader::Next() {
  int c = in_.get();
  if (c == std::char_traits<char>::eof()) return std::nullopt;
  record_line_ = line_;

  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool after_quote = false;  // just closed a quoted field
  while (true) {
    if (c == std::char_traits<char>::eof()) {
      if (in_quotes) {
        throw Error("CSV line " + std::to_string(record_line_) +
                    ": unterminated quoted field");
      }
      row.push_back(std::move(field));
      return row;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && in_.peek() == '\n') in_.get();
      ++line_;
      row.push_back(std::move(field));
      return row;
    } else if (ch == '"' && field.empty() && !after_quote) {
      in_quotes = true;
    } else if (after_quote) {
      throw Error("CSV line " + std::to_string(line_) +
                  ": unexpected character after closing quote");
    } else {
      field.push_back(ch);
    }
    c = in_.get();
  }
}

}  // namespace topicforge

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

#ifndef TOPICFORGE_SRC_UTF8_H_
#define TOPICFORGE_SRC_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace topicforge::internal {

// Decodes UTF-8; each ill-formed sequence becomes U+FFFD.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view code_points);
std::size_t CodePointCount(std::string_view text);

// Character classes matching the semantics of `\w`, `\s` in a Unicode regex.
bool IsWordChar(char32_t c);
bool IsSpace(char32_t c);
// Unicode general category L*.
bool IsLetter(char32_t c);
// Unicode simple case folding.
char32_t FoldCase(char32_t c);

}  // namespace topicforge::internal

#endif  // TOPICFORGE_SRC_UTF8_H_

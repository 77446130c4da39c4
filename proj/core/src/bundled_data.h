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

#ifndef TOPICFORGE_SRC_BUNDLED_DATA_H_
#define TOPICFORGE_SRC_BUNDLED_DATA_H_

#include <string_view>

namespace topicforge::internal {

// Contents of core/data/stopwords_en.txt.
std::string_view BundledStopwords();
// Contents of core/data/lemma_exceptions.tsv.
std::string_view BundledLemmaTable();

}  // namespace topicforge::internal

#endif  // TOPICFORGE_SRC_BUNDLED_DATA_H_

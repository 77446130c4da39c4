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

#ifndef TOPICFORGE_SRC_MODEL_JSON_H_
#define TOPICFORGE_SRC_MODEL_JSON_H_

#include "json.hpp"
#include "topicforge/corpus.h"
#include "topicforge/lda.h"

namespace topicforge::internal {

nlohmann::ordered_json LdaToJson(const LdaModel& model, bool include_state);
LdaModel LdaFromJson(const nlohmann::json& j, const Corpus* corpus);

}  // namespace topicforge::internal

#endif  // TOPICFORGE_SRC_MODEL_JSON_H_

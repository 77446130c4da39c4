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

#include "topicforge/diagnostics.h"

#include <ostream>

namespace topicforge {

void Diagnostics::Skip(const std::string& reason, std::int64_t n) {
  if (n > 0) skipped_[reason] += n;
}

std::int64_t Diagnostics::count(const std::string& reason) const {
  auto it = skipped_.find(reason);
  return it == skipped_.end() ? 0 : it->second;
}

std::int64_t Diagnostics::total() const {
  std::int64_t n = 0;
  for (const auto& [reason, count] : skipped_) n += count;
  return n;
}

void Diagnostics::Merge(const Diagnostics& other) {
  for (const auto& [reason, count] : other.skipped_) Skip(reason, count);
}

void Diagnostics::Write(std::ostream& out) const {
  for (const auto& [reason, count] : skipped_) {
    out << "skipped=" << count << " reason=" << reason << '\n';
  }
}

}  // namespace topicforge

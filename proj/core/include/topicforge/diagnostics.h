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

#ifndef TOPICFORGE_DIAGNOSTICS_H_
#define TOPICFORGE_DIAGNOSTICS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace topicforge {

// Tally of skipped input rows keyed by reason.
class Diagnostics {
 public:
  void Skip(const std::string& reason, std::int64_t n = 1);

  std::int64_t count(const std::string& reason) const;
  std::int64_t total() const;
  bool empty() const { return skipped_.empty(); }
  const std::map<std::string, std::int64_t>& skipped() const { return skipped_; }

  void Merge(const Diagnostics& other);

  // One `skipped=<n> reason=<text>` line per reason, in reason order.
  void Write(std::ostream& out) const;

 private:
  std::map<std::string, std::int64_t> skipped_;
};

}  // namespace topicforge

#endif  // TOPICFORGE_DIAGNOSTICS_H_

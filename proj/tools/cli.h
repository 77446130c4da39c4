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

// Command-line front end: argument parsing and the subcommand runner live in
// a small library so tests can drive them without spawning processes.

#ifndef TOPICFORGE_TOOLS_CLI_H_
#define TOPICFORGE_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace topicforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string out_dir;  // empty: stream results to standard output

  int topics = 20;
  std::optional<double> alpha;  // unset: 50 / topics
  double beta = 0.01;
  int iters = 100;
  double sigma2 = 0.01;
  std::uint64_t seed = 0;
  std::optional<int> year;
  bool tfidf = false;
  std::int64_t no_below = 5;
  double no_above = 0.5;
  std::size_t keep_n = 100000;
  double train_frac = 0.7;
  std::size_t features = 5000;
  double fraction = 1.0;
  std::size_t top_n = 10;
  bool save_state = false;
};

struct ParseOutcome {
  std::optional<RunConfig> config;  // set when the run should proceed
  int exit_code = kExitOk;          // meaningful when config is empty
};

// Flags override config-file values, which override TOPICFORGE_SEED and the
// built-in defaults. Help text and usage errors go to `out` / `err`.
ParseOutcome ParseArgs(int argc, const char* const* argv, std::ostream& out,
                       std::ostream& err);

int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

int Main(int argc, const char* const* argv);

}  // namespace topicforge::cli

#endif  // TOPICFORGE_TOOLS_CLI_H_

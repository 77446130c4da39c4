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

#ifndef TOPICFORGE_RANDOM_H_
#define TOPICFORGE_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace topicforge {

// Seeded pseudo-random source shared by every sampler in the library.
//
// Uniform draws and index draws are derived from the raw 64-bit engine output
// directly, so samplers and shuffles are reproducible across standard
// libraries. Gamma and normal draws go through <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Requires n > 0.
  std::size_t UniformIndex(std::size_t n);

  double Gamma(double shape);
  double Normal(double mean, double stddev);

  // Symmetric Dirichlet(concentration) draw of the given dimension.
  std::vector<double> Dirichlet(double concentration, std::size_t dim);

  // Index drawn proportionally to non-negative, not-all-zero weights.
  std::size_t Categorical(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[UniformIndex(i)]);
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace topicforge

#endif  // TOPICFORGE_RANDOM_H_

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

#include "topicforge/random.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topicforge/error.h"

namespace topicforge {

std::size_t Rng::UniformIndex(std::size_t n) {
  if (n == 0) throw Error("Rng::UniformIndex: empty range");
  const std::uint64_t range = n;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

double Rng::Gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

double Rng::Normal(double mean, double stddev) {
  std::normal_distribution<double> dist(mean, stddev);
  return dist(engine_);
}

std::vector<double> Rng::Dirichlet(double concentration, std::size_t dim) {
  std::vector<double> out(dim);
  if (dim == 1) {
    out[0] = 1.0;
    return out;
  }
  double total = 0.0;
  for (double& x : out) {
    x = Gamma(concentration);
    total += x;
  }
  if (total <= 0.0 || !std::isfinite(total)) {
    // Every gamma draw underflowed (tiny concentration); put all mass on one
    // uniformly chosen coordinate, which is the limiting distribution.
    std::fill(out.begin(), out.end(), 0.0);
    out[UniformIndex(dim)] = 1.0;
    return out;
  }
  for (double& x : out) x /= total;
  return out;
}

std::size_t Rng::Categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double target = Uniform() * total;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    cumulative += weights[k];
    if (target < cumulative) return k;
  }
  // Rounding can leave target == total; fall back to the last positive weight.
  for (std::size_t k = weights.size(); k > 0; --k) {
    if (weights[k - 1] > 0.0) return k - 1;
  }
  throw Error("Rng::Categorical: all weights are zero");
}

}  // namespace topicforge

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

#ifndef TOPICFORGE_SENTIMENT_H_
#define TOPICFORGE_SENTIMENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicforge/ingest.h"
#include "topicforge/textprep.h"

namespace topicforge {

inline constexpr std::size_t kDefaultFeatureCount = 5000;

// The most frequent training terms, each with a dense index.
class FeatureMap {
 public:
  FeatureMap() = default;
  explicit FeatureMap(std::vector<std::string> terms);

  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<std::size_t> Find(std::string_view term) const;

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Top `max_features` terms by total frequency, ties in lexicographic order.
FeatureMap FitFeatures(std::span<const TermList> docs, std::size_t max_features);

// Sorted distinct feature indices with their occurrence counts.
struct FeatureVec {
  std::vector<std::size_t> indices;
  std::vector<std::int32_t> counts;

  bool empty() const { return indices.empty(); }
};

FeatureVec Featurize(const FeatureMap& map, std::span<const std::string> terms);

enum class ClassifierKind {
  kBernoulliNb,
  kMultinomialNb,
  kLogistic,
  kLinearSvm,
  kAveragedPerceptron,
};

inline constexpr std::array<ClassifierKind, 5> kEnsembleKinds = {
    ClassifierKind::kBernoulliNb, ClassifierKind::kMultinomialNb,
    ClassifierKind::kLogistic, ClassifierKind::kLinearSvm,
    ClassifierKind::kAveragedPerceptron};

std::string_view KindName(ClassifierKind kind);
ClassifierKind KindFromName(std::string_view name);

struct TrainingExample {
  FeatureVec x;
  Polarity y = Polarity::kNegative;
};

// Shared settings for the iterative learners. Naive Bayes ignores all but
// `laplace`.
struct TrainConfig {
  int epochs = 5;
  double learning_rate = 0.1;
  double l2 = 1e-4;
  double laplace = 1.0;
  std::uint64_t seed = 0;
};

// Binary sentiment classifier. Naive Bayes kinds are closed form; logistic
// regression and the linear SVM run SGD (log and hinge loss, L2 penalty)
// over presence features; the perceptron returns its averaged weights.
class Classifier {
 public:
  // Throws unless both classes occur in `examples`.
  static Classifier Train(ClassifierKind kind,
                          std::span<const TrainingExample> examples,
                          std::size_t num_features,
                          const TrainConfig& config = {});

  ClassifierKind kind() const { return kind_; }
  std::size_t num_features() const { return num_features_; }

  // Positive-minus-negative decision value: a log-odds for the Bayes and
  // logistic models, a margin otherwise.
  double Score(const FeatureVec& x) const;
  // Positive only for a strictly positive score.
  Polarity Classify(const FeatureVec& x) const;

  // Naive Bayes only: P(term present | class), indexed by Polarity.
  double FeatureLikelihood(std::size_t feature, Polarity c) const;

 private:
  friend struct ClassifierCodec;

  bool is_bayes() const {
    return kind_ == ClassifierKind::kBernoulliNb ||
           kind_ == ClassifierKind::kMultinomialNb;
  }

  ClassifierKind kind_ = ClassifierKind::kBernoulliNb;
  std::size_t num_features_ = 0;
  // Naive Bayes, indexed [class][feature].
  std::array<double, 2> log_prior_{};
  std::array<std::vector<double>, 2> log_prob_;
  std::array<std::vector<double>, 2> log_absent_;  // Bernoulli only
  std::array<double, 2> absent_total_{};           // Bernoulli only
  // Linear models.
  std::vector<double> weights_;
  double bias_ = 0.0;
};

struct SentimentPrediction {
  Polarity polarity = Polarity::kNegative;
  double confidence = 0.0;  // majority votes / 5
};

// Majority of an odd number of votes; confidence = winning votes / total.
SentimentPrediction Vote(std::span<const Polarity> votes);

struct EnsembleModel {
  FeatureMap features;
  std::vector<Classifier> members;

  SentimentPrediction Classify(std::span<const std::string> terms) const;
  std::array<Polarity, 5> Votes(std::span<const std::string> terms) const;
};

// Fits the feature map on `docs` and one classifier of each ensemble kind.
EnsembleModel TrainEnsemble(std::span<const TermList> docs,
                            std::span<const Polarity> labels,
                            std::size_t max_features = kDefaultFeatureCount,
                            const TrainConfig& config = {});

// {"version":1,"features":[...],"classifiers":[{"kind","params"} x 5]}
void SaveEnsemble(const EnsembleModel& model, std::ostream& out);
EnsembleModel LoadEnsemble(std::istream& in);

struct ClassificationMetrics {
  double accuracy = 0.0;
  double f1_micro = 0.0;
};

// Accuracy and micro-averaged F1 from TP/FP/FN pooled over both classes.
ClassificationMetrics Evaluate(std::span<const Polarity> predictions,
                               std::span<const Polarity> golds);

struct InformativeFeature {
  std::string term;
  double ratio = 1.0;
  Polarity favors = Polarity::kPositive;
};

// Terms ranked by max_c P(term | c) / P(term | other), descending, ties in
// lexicographic order. Bernoulli Naive Bayes only.
std::vector<InformativeFeature> MostInformative(const Classifier& nb,
                                                const FeatureMap& features,
                                                std::size_t n);

}  // namespace topicforge

#endif  // TOPICFORGE_SENTIMENT_H_

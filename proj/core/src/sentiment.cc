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

#include "topicforge/sentiment.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>

#include "json.hpp"
#include "topicforge/error.h"
#include "topicforge/random.h"

namespace topicforge {
namespace {

constexpr int kNeg = static_cast<int>(Polarity::kNegative);
constexpr int kPos = static_cast<int>(Polarity::kPositive);

double Sign(Polarity p) { return p == Polarity::kPositive ? 1.0 : -1.0; }

// w = scale * v, so the per-step L2 shrink touches one scalar.
class ScaledWeights {
 public:
  explicit ScaledWeights(std::size_t n) : v_(n, 0.0) {}

  double Dot(const FeatureVec& x) const {
    double s = 0.0;
    for (std::size_t i : x.indices) s += v_[i];
    return s * scale_;
  }
  void Shrink(double factor) {
    scale_ *= factor;
    if (scale_ < 1e-9) {
      for (double& v : v_) v *= scale_;
      scale_ = 1.0;
    }
  }
  void Add(const FeatureVec& x, double step) {
    for (std::size_t i : x.indices) v_[i] += step / scale_;
  }
  std::vector<double> Materialize() const {
    std::vector<double> w(v_);
    for (double& x : w) x *= scale_;
    return w;
  }

 private:
  std::vector<double> v_;
  double scale_ = 1.0;
};

std::vector<std::size_t> EpochOrder(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.Shuffle(order);
  return order;
}

}  // namespace

FeatureMap::FeatureMap(std::vector<std::string> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], i).second) {
      throw Error("feature map: duplicate term '" + terms_[i] + "'");
    }
  }
}

std::optional<std::size_t> FeatureMap::Find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureMap FitFeatures(std::span<const TermList> docs, std::size_t max_features) {
  if (max_features < 1) throw Error("feature map: feature count must be >= 1");
  if (docs.empty()) throw Error("feature map: empty training set");
  std::map<std::string, std::int64_t> freq;
  for (const TermList& doc : docs) {
    for (const std::string& t : doc) ++freq[t];
  }
  // std::map iterates lexicographically; a stable sort keeps that order among
  // equal counts.
  std::vector<std::pair<std::string, std::int64_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > max_features) ranked.resize(max_features);
  std::vector<std::string> terms;
  terms.reserve(ranked.size());
  for (auto& [term, count] : ranked) terms.push_back(std::move(term));
  return FeatureMap(std::move(terms));
}

FeatureVec Featurize(const FeatureMap& map, std::span<const std::string> terms) {
  std::map<std::size_t, std::int32_t> counts;
  for (const std::string& t : terms) {
    if (auto i = map.Find(t)) ++counts[*i];
  }
  FeatureVec fv;
  fv.indices.reserve(counts.size());
  fv.counts.reserve(counts.size());
  for (const auto& [i, c] : counts) {
    fv.indices.push_back(i);
    fv.counts.push_back(c);
  }
  return fv;
}

std::string_view KindName(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kBernoulliNb:
      return "bernoulli_nb";
    case ClassifierKind::kMultinomialNb:
      return "multinomial_nb";
    case ClassifierKind::kLogistic:
      return "logistic_sgd";
    case ClassifierKind::kLinearSvm:
      return "linear_svm_sgd";
    case ClassifierKind::kAveragedPerceptron:
      return "averaged_perceptron";
  }
  return "unknown";
}

ClassifierKind KindFromName(std::string_view name) {
  for (ClassifierKind kind : kEnsembleKinds) {
    if (KindName(kind) == name) return kind;
  }
  throw Error("unknown classifier kind '" + std::string(name) + "'");
}

Classifier Classifier::Train(ClassifierKind kind,
                             std::span<const TrainingExample> examples,
                             std::size_t num_features, const TrainConfig& config) {
  std::array<std::int64_t, 2> class_docs{};
  for (const TrainingExample& e : examples) {
    for (std::size_t i : e.x.indices) {
      if (i >= num_features) throw Error("classifier: feature index out of range");
    }
    ++class_docs[static_cast<int>(e.y)];
  }
  if (class_docs[kNeg] == 0 || class_docs[kPos] == 0) {
    throw Error("classifier: training data must contain both classes");
  }

  Classifier c;
  c.kind_ = kind;
  c.num_features_ = num_features;
  const double n_total = static_cast<double>(examples.size());
  const double a = config.laplace;

  switch (kind) {
    case ClassifierKind::kBernoulliNb: {
      for (int y : {kNeg, kPos}) {
        std::vector<double> docs_with(num_features, 0.0);
        for (const TrainingExample& e : examples) {
          if (static_cast<int>(e.y) != y) continue;
          for (std::size_t i : e.x.indices) docs_with[i] += 1.0;
        }
        const double n_c = static_cast<double>(class_docs[y]);
        c.log_prior_[y] = std::log(n_c / n_total);
        c.log_prob_[y].resize(num_features);
        c.log_absent_[y].resize(num_features);
        c.absent_total_[y] = 0.0;
        for (std::size_t i = 0; i < num_features; ++i) {
          const double p = (docs_with[i] + a) / (n_c + 2.0 * a);
          c.log_prob_[y][i] = std::log(p);
          c.log_absent_[y][i] = std::log1p(-p);
          c.absent_total_[y] += c.log_absent_[y][i];
        }
      }
      break;
    }
    case ClassifierKind::kMultinomialNb: {
      for (int y : {kNeg, kPos}) {
        std::vector<double> counts(num_features, 0.0);
        double total = 0.0;
        for (const TrainingExample& e : examples) {
          if (static_cast<int>(e.y) != y) continue;
          for (std::size_t j = 0; j < e.x.indices.size(); ++j) {
            counts[e.x.indices[j]] += e.x.counts[j];
            total += e.x.counts[j];
          }
        }
        c.log_prior_[y] = std::log(static_cast<double>(class_docs[y]) / n_total);
        c.log_prob_[y].resize(num_features);
        const double denom = total + a * static_cast<double>(num_features);
        for (std::size_t i = 0; i < num_features; ++i) {
          c.log_prob_[y][i] = std::log((counts[i] + a) / denom);
        }
      }
      break;
    }
    case ClassifierKind::kLogistic:
    case ClassifierKind::kLinearSvm: {
      Rng rng(config.seed);
      ScaledWeights w(num_features);
      double bias = 0.0;
      const double shrink = 1.0 - config.learning_rate * config.l2;
      for (int epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t idx : EpochOrder(examples.size(), rng)) {
          const TrainingExample& e = examples[idx];
          const double margin = w.Dot(e.x) + bias;
          double step = 0.0;  // negative gradient of the loss wrt the margin
          if (kind == ClassifierKind::kLogistic) {
            const double target = e.y == Polarity::kPositive ? 1.0 : 0.0;
            step = target - 1.0 / (1.0 + std::exp(-margin));
          } else if (Sign(e.y) * margin < 1.0) {
            step = Sign(e.y);
          }
          w.Shrink(shrink);
          if (step != 0.0) {
            w.Add(e.x, config.learning_rate * step);
            bias += config.learning_rate * step;
          }
        }
      }
      c.weights_ = w.Materialize();
      c.bias_ = bias;
      break;
    }
    case ClassifierKind::kAveragedPerceptron: {
      Rng rng(config.seed);
      std::vector<double> w(num_features, 0.0);
      std::vector<double> u(num_features, 0.0);  // count-weighted updates
      double bias = 0.0;
      double bias_u = 0.0;
      double step_count = 1.0;
      for (int epoch = 0; epoch < config.epochs; ++epoch) {
        for (std::size_t idx : EpochOrder(examples.size(), rng)) {
          const TrainingExample& e = examples[idx];
          double margin = bias;
          for (std::size_t i : e.x.indices) margin += w[i];
          const double y = Sign(e.y);
          if (y * margin <= 0.0) {
            for (std::size_t i : e.x.indices) {
              w[i] += y;
              u[i] += step_count * y;
            }
            bias += y;
            bias_u += step_count * y;
          }
          step_count += 1.0;
        }
      }
      c.weights_.resize(num_features);
      for (std::size_t i = 0; i < num_features; ++i) {
        c.weights_[i] = w[i] - u[i] / step_count;
      }
      c.bias_ = bias - bias_u / step_count;
      break;
    }
  }
  return c;
}

double Classifier::Score(const FeatureVec& x) const {
  switch (kind_) {
    case ClassifierKind::kBernoulliNb: {
      std::array<double, 2> s{};
      for (int y : {kNeg, kPos}) {
        s[y] = log_prior_[y] + absent_total_[y];
        for (std::size_t i : x.indices) {
          s[y] += log_prob_[y][i] - log_absent_[y][i];
        }
      }
      return s[kPos] - s[kNeg];
    }
    case ClassifierKind::kMultinomialNb: {
      std::array<double, 2> s{};
      for (int y : {kNeg, kPos}) {
        s[y] = log_prior_[y];
        for (std::size_t j = 0; j < x.indices.size(); ++j) {
          s[y] += x.counts[j] * log_prob_[y][x.indices[j]];
        }
      }
      return s[kPos] - s[kNeg];
    }
    default: {
      double s = bias_;
      for (std::size_t i : x.indices) s += weights_[i];
      return s;
    }
  }
}

Polarity Classifier::Classify(const FeatureVec& x) const {
  return Score(x) > 0.0 ? Polarity::kPositive : Polarity::kNegative;
}

double Classifier::FeatureLikelihood(std::size_t feature, Polarity c) const {
  if (!is_bayes()) throw Error("feature likelihood requires a Naive Bayes model");
  if (feature >= num_features_) throw Error("feature index out of range");
  return std::exp(log_prob_[static_cast<int>(c)][feature]);
}

SentimentPrediction Vote(std::span<const Polarity> votes) {
  if (votes.empty() || votes.size() % 2 == 0) {
    throw Error("vote: need an odd, non-zero number of votes");
  }
  const auto positive = std::count(votes.begin(), votes.end(), Polarity::kPositive);
  const auto negative = static_cast<std::ptrdiff_t>(votes.size()) - positive;
  SentimentPrediction p;
  p.polarity = positive > negative ? Polarity::kPositive : Polarity::kNegative;
  p.confidence = static_cast<double>(std::max(positive, negative)) /
                 static_cast<double>(votes.size());
  return p;
}

std::array<Polarity, 5> EnsembleModel::Votes(
    std::span<const std::string> terms) const {
  if (members.size() != 5) throw Error("ensemble must have exactly 5 members");
  const FeatureVec x = Featurize(features, terms);
  std::array<Polarity, 5> votes{};
  for (std::size_t i = 0; i < 5; ++i) votes[i] = members[i].Classify(x);
  return votes;
}

SentimentPrediction EnsembleModel::Classify(
    std::span<const std::string> terms) const {
  const auto votes = Votes(terms);
  return Vote(votes);
}

EnsembleModel TrainEnsemble(std::span<const TermList> docs,
                            std::span<const Polarity> labels,
                            std::size_t max_features, const TrainConfig& config) {
  if (docs.size() != labels.size()) {
    throw Error("ensemble: one label per document required");
  }
  EnsembleModel model;
  model.features = FitFeatures(docs, max_features);
  std::vector<TrainingExample> examples;
  examples.reserve(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    examples.push_back({Featurize(model.features, docs[i]), labels[i]});
  }
  for (ClassifierKind kind : kEnsembleKinds) {
    model.members.push_back(
        Classifier::Train(kind, examples, model.features.size(), config));
  }
  return model;
}

struct ClassifierCodec {
  static nlohmann::ordered_json Encode(const Classifier& c) {
    nlohmann::ordered_json params;
    params["num_features"] = c.num_features_;
    if (c.is_bayes()) {
      params["log_prior"] = c.log_prior_;
      params["log_prob"] = c.log_prob_;
    } else {
      params["weights"] = c.weights_;
      params["bias"] = c.bias_;
    }
    nlohmann::ordered_json j;
    j["kind"] = KindName(c.kind_);
    j["params"] = std::move(params);
    return j;
  }

  static Classifier Decode(const nlohmann::json& j) {
    Classifier c;
    c.kind_ = KindFromName(j.at("kind").get<std::string>());
    const auto& params = j.at("params");
    c.num_features_ = params.at("num_features").get<std::size_t>();
    if (c.is_bayes()) {
      c.log_prior_ = params.at("log_prior").get<std::array<double, 2>>();
      c.log_prob_ = params.at("log_prob").get<std::array<std::vector<double>, 2>>();
      for (int y : {kNeg, kPos}) {
        if (c.log_prob_[y].size() != c.num_features_) {
          throw Error("ensemble JSON: log_prob has the wrong length");
        }
        if (c.kind_ == ClassifierKind::kBernoulliNb) {
          c.log_absent_[y].resize(c.num_features_);
          c.absent_total_[y] = 0.0;
          for (std::size_t i = 0; i < c.num_features_; ++i) {
            c.log_absent_[y][i] = std::log1p(-std::exp(c.log_prob_[y][i]));
            c.absent_total_[y] += c.log_absent_[y][i];
          }
        }
      }
    } else {
      c.weights_ = params.at("weights").get<std::vector<double>>();
      c.bias_ = params.at("bias").get<double>();
      if (c.weights_.size() != c.num_features_) {
        throw Error("ensemble JSON: weights have the wrong length");
      }
    }
    return c;
  }
};

void SaveEnsemble(const EnsembleModel& model, std::ostream& out) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["features"] = model.features.terms();
  nlohmann::ordered_json classifiers = nlohmann::ordered_json::array();
  for (const Classifier& c : model.members) {
    classifiers.push_back(ClassifierCodec::Encode(c));
  }
  j["classifiers"] = std::move(classifiers);
  out << j.dump() << '\n';
}

EnsembleModel LoadEnsemble(std::istream& in) {
  try {
    nlohmann::json j;
    in >> j;
    if (j.at("version").get<int>() != 1) {
      throw Error("ensemble JSON: unsupported version");
    }
    EnsembleModel model;
    model.features = FeatureMap(j.at("features").get<std::vector<std::string>>());
    for (const auto& c : j.at("classifiers")) {
      model.members.push_back(ClassifierCodec::Decode(c));
      if (model.members.back().num_features() != model.features.size()) {
        throw Error("ensemble JSON: classifier and feature map disagree");
      }
    }
    if (model.members.size() != 5) {
      throw Error("ensemble JSON: expected 5 classifiers");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("ensemble JSON: ") + e.what());
  }
}

ClassificationMetrics Evaluate(std::span<const Polarity> predictions,
                               std::span<const Polarity> golds) {
  if (predictions.size() != golds.size()) throw Error("evaluate: length mismatch");
  if (golds.empty()) throw Error("evaluate: no predictions");
  std::int64_t correct = 0;
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (predictions[i] == golds[i]) ++correct;
    for (Polarity c : {Polarity::kNegative, Polarity::kPositive}) {
      const bool predicted = predictions[i] == c;
      const bool actual = golds[i] == c;
      if (predicted && actual) ++tp;
      if (predicted && !actual) ++fp;
      if (!predicted && actual) ++fn;
    }
  }
  ClassificationMetrics m;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(golds.size());
  if (tp > 0) {
    const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f1_micro = 2.0 * precision * recall / (precision + recall);
  }
  return m;
}

std::vector<InformativeFeature> MostInformative(const Classifier& nb,
                                                const FeatureMap& features,
                                                std::size_t n) {
  if (nb.kind() != ClassifierKind::kBernoulliNb) {
    throw Error("most informative features require a Bernoulli Naive Bayes model");
  }
  if (nb.num_features() != features.size()) {
    throw Error("most informative: feature map does not match the classifier");
  }
  std::vector<InformativeFeature> out;
  out.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double pos = nb.FeatureLikelihood(i, Polarity::kPositive);
    const double neg = nb.FeatureLikelihood(i, Polarity::kNegative);
    if (pos >= neg) {
      out.push_back({features.terms()[i], pos / neg, Polarity::kPositive});
    } else {
      out.push_back({features.terms()[i], neg / pos, Polarity::kNegative});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.term < b.term;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace topicforge

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

#include "topicforge/lda.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "model_json.h"
#include "topicforge/error.h"

namespace topicforge {

LdaHyper LdaHyper::Defaults(int num_topics) {
  return {num_topics, 50.0 / num_topics, 0.01};
}

void LdaHyper::Validate() const {
  if (num_topics < 1) throw Error("LDA: number of topics must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error("LDA: alpha must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error("LDA: beta must be positive");
  }
}

LdaModel::LdaModel(const LdaHyper& hyper, std::size_t vocab_size,
                   std::uint64_t seed)
    : hyper_(hyper), vocab_size_(vocab_size), seed_(seed), rng_(seed) {
  hyper_.Validate();
  if (vocab_size_ == 0) throw Error("LDA: empty vocabulary");
  n_wk_.assign(vocab_size_ * K(), 0);
  n_k_.assign(K(), 0);
}

void LdaModel::LoadCorpus(const Corpus& corpus) {
  if (corpus.docs.empty()) throw Error("LDA: empty corpus");
  if (corpus.vocab_size != vocab_size_) {
    throw Error("LDA: corpus vocabulary size does not match the model");
  }
  corpus.Validate();
  doc_offsets_.assign(1, 0);
  words_.clear();
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    if (corpus.docs[d].empty()) {
      throw Error("LDA: document " + std::to_string(d) + " is empty");
    }
    for (const BowEntry& e : corpus.docs[d]) {
      words_.insert(words_.end(), static_cast<std::size_t>(e.count), e.id);
    }
    doc_offsets_.push_back(words_.size());
  }
  z_.assign(words_.size(), 0);
  n_dk_.assign(num_docs() * K(), 0);
}

LdaModel LdaModel::Init(const Corpus& corpus, const LdaHyper& hyper,
                        std::uint64_t seed) {
  LdaModel m(hyper, corpus.vocab_size, seed);
  m.LoadCorpus(corpus);
  for (std::size_t d = 0; d < m.num_docs(); ++d) {
    for (std::size_t i = 0; i < m.doc_length(d); ++i) {
      m.AssignToken(d, i, static_cast<int>(m.rng_.UniformIndex(m.K())));
    }
  }
  return m;
}

LdaModel LdaModel::FromTopicCounts(const LdaHyper& hyper, std::size_t vocab_size,
                                   std::span<const std::int64_t> topic_word,
                                   std::uint64_t seed) {
  LdaModel m(hyper, vocab_size, seed);
  if (topic_word.size() != m.K() * vocab_size) {
    throw Error("LDA: topic-word table has the wrong size");
  }
  for (std::size_t k = 0; k < m.K(); ++k) {
    for (std::size_t w = 0; w < vocab_size; ++w) {
      const std::int64_t c = topic_word[k * vocab_size + w];
      if (c < 0) throw Error("LDA: negative topic-word count");
      m.n_wk_[w * m.K() + k] = c;
      m.n_k_[k] += c;
    }
  }
  return m;
}

void LdaModel::AttachState(const Corpus& corpus, std::span<const int> z) {
  std::vector<std::int64_t> saved_wk = n_wk_;
  LoadCorpus(corpus);
  if (z.size() != words_.size()) {
    throw Error("LDA: saved assignments do not match the corpus");
  }
  std::fill(n_wk_.begin(), n_wk_.end(), 0);
  std::fill(n_k_.begin(), n_k_.end(), 0);
  for (std::size_t d = 0; d < num_docs(); ++d) {
    for (std::size_t i = 0; i < doc_length(d); ++i) {
      const int k = z[doc_offsets_[d] + i];
      if (k < 0 || static_cast<std::size_t>(k) >= K()) {
        throw Error("LDA: saved assignment outside [0, K)");
      }
      AssignToken(d, i, k);
    }
  }
  if (n_wk_ != saved_wk) {
    throw Error("LDA: saved assignments disagree with saved topic-word counts");
  }
}

std::int64_t LdaModel::total_tokens() const {
  return std::accumulate(n_k_.begin(), n_k_.end(), std::int64_t{0});
}

void LdaModel::RemoveToken(std::size_t d, std::size_t i) {
  const std::size_t pos = doc_offsets_[d] + i;
  const auto k = static_cast<std::size_t>(z_[pos]);
  --n_dk_[d * K() + k];
  --n_wk_[static_cast<std::size_t>(words_[pos]) * K() + k];
  --n_k_[k];
}

void LdaModel::AssignToken(std::size_t d, std::size_t i, int k) {
  const std::size_t pos = doc_offsets_[d] + i;
  z_[pos] = k;
  ++n_dk_[d * K() + k];
  ++n_wk_[static_cast<std::size_t>(words_[pos]) * K() + k];
  ++n_k_[k];
}

void LdaModel::CollapsedWeights(std::size_t d, TokenId w, int excluded_topic,
                                std::span<double> out) const {
  const double v_beta = static_cast<double>(vocab_size_) * hyper_.beta;
  const std::int32_t* dk = n_dk_.data() + d * K();
  const std::int64_t* wk = n_wk_.data() + static_cast<std::size_t>(w) * K();
  for (std::size_t k = 0; k < K(); ++k) {
    const std::int64_t drop = static_cast<int>(k) == excluded_topic ? 1 : 0;
    out[k] = (static_cast<double>(dk[k] - drop) + hyper_.alpha) *
             (static_cast<double>(wk[k] - drop) + hyper_.beta) /
             (static_cast<double>(n_k_[k] - drop) + v_beta);
  }
}

std::vector<double> LdaModel::Conditional(std::size_t d, std::size_t i) const {
  if (!has_state() || d >= num_docs() || i >= doc_length(d)) {
    throw Error("LDA: token index out of range");
  }
  const std::size_t pos = doc_offsets_[d] + i;
  std::vector<double> p(K());
  CollapsedWeights(d, words_[pos], z_[pos], p);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return p;
}

void LdaModel::Sweep() {
  if (!has_state()) throw Error("LDA: model has no sampler state");
  std::vector<double> weights(K());
  for (std::size_t d = 0; d < num_docs(); ++d) {
    const std::size_t n = doc_length(d);
    for (std::size_t i = 0; i < n; ++i) {
      RemoveToken(d, i);
      CollapsedWeights(d, words_[doc_offsets_[d] + i], -1, weights);
      AssignToken(d, i, static_cast<int>(rng_.Categorical(weights)));
    }
  }
}

void LdaModel::CheckInvariants() const {
  std::vector<std::int64_t> k_from_words(K(), 0);
  for (std::size_t w = 0; w < vocab_size_; ++w) {
    for (std::size_t k = 0; k < K(); ++k) {
      if (n_wk_[w * K() + k] < 0) throw Error("LDA: negative topic-word count");
      k_from_words[k] += n_wk_[w * K() + k];
    }
  }
  if (k_from_words != n_k_) throw Error("LDA: topic totals disagree with n_kw");
  if (!has_state()) return;
  if (total_tokens() != static_cast<std::int64_t>(words_.size())) {
    throw Error("LDA: topic totals disagree with token count");
  }
  std::vector<std::int32_t> dk(n_dk_.size(), 0);
  std::vector<std::int64_t> wk(n_wk_.size(), 0);
  for (std::size_t d = 0; d < num_docs(); ++d) {
    for (std::size_t pos = doc_offsets_[d]; pos < doc_offsets_[d + 1]; ++pos) {
      const int k = z_[pos];
      if (k < 0 || static_cast<std::size_t>(k) >= K()) {
        throw Error("LDA: assignment outside [0, K)");
      }
      ++dk[d * K() + k];
      ++wk[static_cast<std::size_t>(words_[pos]) * K() + k];
    }
  }
  if (dk != n_dk_) throw Error("LDA: n_dk disagrees with assignments");
  if (wk != n_wk_) throw Error("LDA: n_kw disagrees with assignments");
}

double LdaModel::Phi(int k, TokenId w) const {
  const double v_beta = static_cast<double>(vocab_size_) * hyper_.beta;
  return (static_cast<double>(topic_word_count(k, w)) + hyper_.beta) /
         (static_cast<double>(n_k_[k]) + v_beta);
}

std::vector<double> LdaModel::TopicDistribution(int k) const {
  if (k < 0 || k >= num_topics()) throw Error("LDA: topic out of range");
  std::vector<double> phi(vocab_size_);
  for (std::size_t w = 0; w < vocab_size_; ++w) {
    phi[w] = Phi(k, static_cast<TokenId>(w));
  }
  return phi;
}

std::vector<TopicWord> LdaModel::TopicWords(int k, std::size_t n) const {
  const std::vector<double> phi = TopicDistribution(k);
  std::vector<TopicWord> words(phi.size());
  for (std::size_t w = 0; w < phi.size(); ++w) {
    words[w] = {static_cast<TokenId>(w), phi[w]};
  }
  const std::size_t keep = std::min(n, words.size());
  std::partial_sort(words.begin(), words.begin() + keep, words.end(),
                    [](const TopicWord& a, const TopicWord& b) {
                      if (a.prob != b.prob) return a.prob > b.prob;
                      return a.id < b.id;
                    });
  words.resize(keep);
  return words;
}

std::vector<double> LdaModel::DocTopics(std::size_t d) const {
  if (!has_state() || d >= num_docs()) throw Error("LDA: document out of range");
  std::vector<double> theta(K());
  const double denom = static_cast<double>(doc_length(d)) +
                       static_cast<double>(K()) * hyper_.alpha;
  for (std::size_t k = 0; k < K(); ++k) {
    theta[k] = (static_cast<double>(n_dk_[d * K() + k]) + hyper_.alpha) / denom;
  }
  return theta;
}

double LdaModel::LogLikelihood(const Corpus& corpus) const {
  if (!has_state() || corpus.docs.size() != num_docs()) {
    throw Error("LDA: corpus does not match the sampler state");
  }
  // phi is shared by all documents; tabulate it once word-major.
  std::vector<double> phi(vocab_size_ * K());
  for (std::size_t w = 0; w < vocab_size_; ++w) {
    for (std::size_t k = 0; k < K(); ++k) {
      phi[w * K() + k] = Phi(static_cast<int>(k), static_cast<TokenId>(w));
    }
  }
  double ll = 0.0;
  for (std::size_t d = 0; d < num_docs(); ++d) {
    const std::vector<double> theta = DocTopics(d);
    for (const BowEntry& e : corpus.docs[d]) {
      if (static_cast<std::size_t>(e.id) >= vocab_size_) {
        throw Error("LDA: corpus token outside the vocabulary");
      }
      double p = 0.0;
      for (std::size_t k = 0; k < K(); ++k) {
        p += theta[k] * phi[static_cast<std::size_t>(e.id) * K() + k];
      }
      ll += static_cast<double>(e.count) * std::log(p);
    }
  }
  return ll;
}

double LdaModel::Perplexity(const Corpus& corpus) const {
  const auto tokens = corpus.TotalTokens();
  if (tokens == 0) throw Error("LDA: perplexity of an empty corpus");
  return std::exp(-LogLikelihood(corpus) / static_cast<double>(tokens));
}

LdaModel TrainLda(const Corpus& corpus, const LdaHyper& hyper, int sweeps,
                  std::uint64_t seed, std::vector<double>* log_likelihood_trace) {
  if (sweeps < 1) throw Error("LDA: sweeps must be >= 1");
  LdaModel model = LdaModel::Init(corpus, hyper, seed);
  if (log_likelihood_trace) log_likelihood_trace->clear();
  for (int s = 0; s < sweeps; ++s) {
    model.Sweep();
    if (log_likelihood_trace) {
      log_likelihood_trace->push_back(model.LogLikelihood(corpus));
    }
  }
  return model;
}

SyntheticCorpus GenerateCorpus(const LdaHyper& hyper, std::size_t vocab_size,
                               std::size_t num_docs, std::size_t doc_length,
                               std::uint64_t seed) {
  hyper.Validate();
  if (vocab_size == 0 || num_docs == 0 || doc_length == 0) {
    throw Error("GenerateCorpus: all dimensions must be >= 1");
  }
  const auto num_topics = static_cast<std::size_t>(hyper.num_topics);
  Rng rng(seed);
  SyntheticCorpus out;
  out.phi = Matrix(num_topics, vocab_size);
  for (std::size_t k = 0; k < num_topics; ++k) {
    const std::vector<double> phi_k = rng.Dirichlet(hyper.beta, vocab_size);
    std::copy(phi_k.begin(), phi_k.end(), out.phi.row(k).begin());
  }
  out.theta = Matrix(num_docs, num_topics);
  out.corpus.vocab_size = vocab_size;
  out.corpus.docs.reserve(num_docs);
  out.topics.resize(num_docs);
  out.tokens.resize(num_docs);
  std::vector<std::int32_t> counts(vocab_size);
  for (std::size_t d = 0; d < num_docs; ++d) {
    const std::vector<double> theta_d = rng.Dirichlet(hyper.alpha, num_topics);
    std::copy(theta_d.begin(), theta_d.end(), out.theta.row(d).begin());
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t n = 0; n < doc_length; ++n) {
      const std::size_t k = rng.Categorical(theta_d);
      const std::size_t w = rng.Categorical(out.phi.row(k));
      out.topics[d].push_back(static_cast<int>(k));
      out.tokens[d].push_back(static_cast<TokenId>(w));
      ++counts[w];
    }
    BowDoc doc;
    for (std::size_t w = 0; w < vocab_size; ++w) {
      if (counts[w] > 0) doc.push_back({static_cast<TokenId>(w), counts[w]});
    }
    out.corpus.docs.push_back(std::move(doc));
  }
  return out;
}

void WriteTopicReport(std::ostream& out, const LdaModel& model,
                      const Vocabulary& vocab, std::size_t top_n) {
  if (vocab.size() != model.vocab_size()) {
    throw Error("topic report: vocabulary does not match the model");
  }
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (int k = 0; k < model.num_topics(); ++k) {
    std::size_t rank = 1;
    for (const TopicWord& tw : model.TopicWords(k, top_n)) {
      out << k << '\t' << rank++ << '\t' << vocab.token(tw.id) << '\t'
          << tw.prob << '\n';
    }
  }
  out.flags(flags);
  out.precision(precision);
}

namespace internal {

nlohmann::ordered_json LdaToJson(const LdaModel& model, bool include_state) {
  const auto K = static_cast<std::size_t>(model.num_topics());
  const std::size_t V = model.vocab_size();
  std::vector<std::int64_t> n_kw(K * V);
  std::vector<std::int64_t> n_k(K);
  for (std::size_t k = 0; k < K; ++k) {
    n_k[k] = model.topic_total(static_cast<int>(k));
    for (std::size_t w = 0; w < V; ++w) {
      n_kw[k * V + w] =
          model.topic_word_count(static_cast<int>(k), static_cast<TokenId>(w));
    }
  }
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["K"] = model.num_topics();
  j["V"] = V;
  j["alpha"] = model.hyper().alpha;
  j["beta"] = model.hyper().beta;
  j["n_kw"] = std::move(n_kw);
  j["n_k"] = std::move(n_k);
  j["seed"] = model.seed();
  if (include_state && model.has_state()) {
    std::vector<std::int64_t> n_dk;
    std::vector<int> z;
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
      for (std::size_t k = 0; k < K; ++k) {
        n_dk.push_back(model.doc_topic_count(d, static_cast<int>(k)));
      }
      const auto a = model.assignments(d);
      z.insert(z.end(), a.begin(), a.end());
    }
    j["n_dk"] = std::move(n_dk);
    j["z"] = std::move(z);
  }
  return j;
}

LdaModel LdaFromJson(const nlohmann::json& j, const Corpus* corpus) {
  try {
    if (j.at("version").get<int>() != 1) {
      throw Error("LDA model: unsupported version");
    }
    const LdaHyper hyper{j.at("K").get<int>(), j.at("alpha").get<double>(),
                         j.at("beta").get<double>()};
    const auto n_kw = j.at("n_kw").get<std::vector<std::int64_t>>();
    LdaModel model = LdaModel::FromTopicCounts(
        hyper, j.at("V").get<std::size_t>(), n_kw, j.at("seed").get<std::uint64_t>());
    const auto n_k = j.at("n_k").get<std::vector<std::int64_t>>();
    for (int k = 0; k < hyper.num_topics; ++k) {
      if (n_k.size() != static_cast<std::size_t>(hyper.num_topics) ||
          n_k[k] != model.topic_total(k)) {
        throw Error("LDA model: n_k disagrees with n_kw");
      }
    }
    if (corpus != nullptr && j.contains("z")) {
      model.AttachState(*corpus, j.at("z").get<std::vector<int>>());
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("LDA model JSON: ") + e.what());
  }
}

}  // namespace internal

void SaveLdaModel(const LdaModel& model, std::ostream& out, bool include_state) {
  out << internal::LdaToJson(model, include_state).dump() << '\n';
}

LdaModel LoadLdaModel(std::istream& in, const Corpus* corpus) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("LDA model JSON: ") + e.what());
  }
  return internal::LdaFromJson(j, corpus);
}

}  // namespace topicforge

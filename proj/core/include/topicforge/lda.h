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

#ifndef TOPICFORGE_LDA_H_
#define TOPICFORGE_LDA_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "topicforge/corpus.h"
#include "topicforge/matrix.h"
#include "topicforge/random.h"

namespace topicforge {

// Symmetric Dirichlet priors: alpha on document-topic, beta on topic-word.
struct LdaHyper {
  int num_topics = 20;
  double alpha = 2.5;
  double beta = 0.01;

  // alpha = 50 / K, beta = 0.01.
  static LdaHyper Defaults(int num_topics);
  void Validate() const;
};

struct TopicWord {
  TokenId id = 0;
  double prob = 0.0;
};

// Latent Dirichlet allocation trained by collapsed Gibbs sampling.
//
// A model always carries topic-word counts. Models built by Init (or loaded
// together with their corpus) also carry the sampler state: the token stream
// of every document, its topic assignments z and the doc-topic counts. Count
// tables are kept consistent with z at all times:
//   sum_k n_dk[d,k] = N_d,  sum_w n_kw[k,w] = n_k[k],  sum_k n_k[k] = T.
class LdaModel {
 public:
  // Every token of every document gets an independent uniform topic.
  // Throws on an empty corpus or an empty document.
  static LdaModel Init(const Corpus& corpus, const LdaHyper& hyper,
                       std::uint64_t seed);

  // Topic-word statistics without sampler state. `topic_word` is K x V
  // row-major.
  static LdaModel FromTopicCounts(const LdaHyper& hyper, std::size_t vocab_size,
                                  std::span<const std::int64_t> topic_word,
                                  std::uint64_t seed);

  const LdaHyper& hyper() const { return hyper_; }
  int num_topics() const { return hyper_.num_topics; }
  std::size_t vocab_size() const { return vocab_size_; }
  std::uint64_t seed() const { return seed_; }

  bool has_state() const { return !doc_offsets_.empty(); }
  std::size_t num_docs() const {
    return doc_offsets_.empty() ? 0 : doc_offsets_.size() - 1;
  }
  std::int64_t total_tokens() const;

  std::int64_t topic_word_count(int k, TokenId w) const {
    return n_wk_[static_cast<std::size_t>(w) * K() + k];
  }
  std::int64_t topic_total(int k) const { return n_k_[k]; }
  std::int64_t doc_topic_count(std::size_t d, int k) const {
    return n_dk_[d * K() + k];
  }
  std::size_t doc_length(std::size_t d) const {
    return doc_offsets_[d + 1] - doc_offsets_[d];
  }
  std::span<const TokenId> words(std::size_t d) const {
    return {words_.data() + doc_offsets_[d], doc_length(d)};
  }
  std::span<const int> assignments(std::size_t d) const {
    return {z_.data() + doc_offsets_[d], doc_length(d)};
  }

  // Full conditional p(z_di = k | z_-di, w) with token (d, i) excluded from
  // the counts; sums to 1.
  std::vector<double> Conditional(std::size_t d, std::size_t i) const;

  // Resamples every token once, documents in order, positions in order.
  void Sweep();

  // Throws Error if any count identity is violated.
  void CheckInvariants() const;

  // phi_kw = (n_kw + beta) / (n_k + V beta).
  double Phi(int k, TokenId w) const;
  std::vector<double> TopicDistribution(int k) const;
  // Top-n words of topic k by probability, ties by ascending id.
  std::vector<TopicWord> TopicWords(int k, std::size_t n) const;
  // theta_dk = (n_dk + alpha) / (N_d + K alpha).
  std::vector<double> DocTopics(std::size_t d) const;

  // sum over tokens of ln sum_k theta_dk phi_kw. `corpus` must be the one the
  // state was built from.
  double LogLikelihood(const Corpus& corpus) const;
  // exp(-LogLikelihood / T).
  double Perplexity(const Corpus& corpus) const;

  // Sampler primitives, for samplers layered on top of the LDA state.
  void RemoveToken(std::size_t d, std::size_t i);
  void AssignToken(std::size_t d, std::size_t i, int k);
  // Unnormalized (n_dk + alpha)(n_kw + beta)/(n_k + V beta) for word w in
  // document d under the current counts. `excluded_topic` (if >= 0) is
  // treated as having one fewer token of w in d.
  void CollapsedWeights(std::size_t d, TokenId w, int excluded_topic,
                        std::span<double> out) const;
  Rng& rng() { return rng_; }

  // Rebuilds the sampler state from saved assignments. `z` lists, per
  // document, the topic of each token in the order Init expands the
  // corpus (by ascending id, repeated by count).
  void AttachState(const Corpus& corpus, std::span<const int> z);

 private:
  LdaModel(const LdaHyper& hyper, std::size_t vocab_size, std::uint64_t seed);

  std::size_t K() const { return static_cast<std::size_t>(hyper_.num_topics); }
  void LoadCorpus(const Corpus& corpus);

  LdaHyper hyper_;
  std::size_t vocab_size_ = 0;
  std::uint64_t seed_ = 0;
  Rng rng_;

  std::vector<std::int64_t> n_wk_;  // V x K, word-major
  std::vector<std::int64_t> n_k_;
  std::vector<std::int32_t> n_dk_;  // M x K
  std::vector<std::size_t> doc_offsets_;
  std::vector<TokenId> words_;
  std::vector<int> z_;
};

// Init followed by `sweeps` Gibbs sweeps. When `log_likelihood_trace` is
// given it receives the plug-in log-likelihood after each sweep.
LdaModel TrainLda(const Corpus& corpus, const LdaHyper& hyper, int sweeps,
                  std::uint64_t seed,
                  std::vector<double>* log_likelihood_trace = nullptr);

// Draw from the generative process together with its ground truth.
struct SyntheticCorpus {
  Corpus corpus;
  Matrix theta;  // M x K
  Matrix phi;    // K x V
  std::vector<std::vector<int>> topics;  // per document, per token
  std::vector<std::vector<TokenId>> tokens;
};

// theta_d ~ Dir(alpha), phi_k ~ Dir(beta); per token z ~ theta_d, w ~ phi_z.
SyntheticCorpus GenerateCorpus(const LdaHyper& hyper, std::size_t vocab_size,
                               std::size_t num_docs, std::size_t doc_length,
                               std::uint64_t seed);

// `topic<TAB>rank<TAB>token<TAB>prob` for the top `top_n` words of every
// topic; ranks start at 1.
void WriteTopicReport(std::ostream& out, const LdaModel& model,
                      const Vocabulary& vocab, std::size_t top_n);

// {"version":1,"K","V","alpha","beta","n_kw" (K x V row-major),"n_k","seed"};
// with `include_state`, also "n_dk" (M x K row-major) and "z".
void SaveLdaModel(const LdaModel& model, std::ostream& out,
                  bool include_state = false);
// Restores topic-word statistics. If `corpus` is given and the file has "z",
// the sampler state is rebuilt against it.
LdaModel LoadLdaModel(std::istream& in, const Corpus* corpus = nullptr);

}  // namespace topicforge

#endif  // TOPICFORGE_LDA_H_

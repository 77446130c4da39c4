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

#ifndef TOPICFORGE_SLDA_H_
#define TOPICFORGE_SLDA_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "topicforge/corpus.h"
#include "topicforge/lda.h"
#include "topicforge/matrix.h"

namespace topicforge {

// Empirical topic frequencies of one document; sums to 1.
using TopicBar = std::vector<double>;

inline constexpr double kDefaultEtaRidge = 1e-6;
inline constexpr double kDefaultSigma2 = 0.01;

// zbar[k] = (tokens assigned k) / N. Throws on an empty document.
TopicBar TopicBarOf(std::span<const int> assignments, int num_topics);

// Supervised LDA with a Gaussian response y ~ N(eta . zbar, sigma2).
class SldaModel {
 public:
  SldaModel(LdaModel base, std::vector<double> eta, double sigma2);

  const LdaModel& base() const { return base_; }
  LdaModel& base() { return base_; }
  const std::vector<double>& eta() const { return eta_; }
  void set_eta(std::vector<double> eta);
  double sigma2() const { return sigma2_; }
  int num_topics() const { return base_.num_topics(); }

  // p(z_di = k | rest, y_d), token (d, i) excluded from the counts: the LDA
  // collapsed factor times exp(-(y_d - eta . zbar_d[i <- k])^2 / (2 sigma2)).
  std::vector<double> Conditional(std::size_t d, std::size_t i, double y) const;

  // One Gibbs sweep over every token under the supervised conditional.
  void Sweep(std::span<const double> labels);

  TopicBar DocTopicBar(std::size_t d) const;
  // M x K matrix of the current topic bars.
  Matrix TopicBars() const;

  double Predict(const TopicBar& zbar) const;

 private:
  // Multiplies `weights` by the response factor for document d, whose
  // doc-topic counts must already exclude the token being resampled.
  void ApplyResponse(std::size_t d, double y, int excluded_topic,
                     std::span<double> weights) const;

  LdaModel base_;
  std::vector<double> eta_;
  double sigma2_;
};

// Solves (Z^T Z + ridge I) eta = Z^T y. Throws on non-finite input or when
// the system cannot be solved.
std::vector<double> UpdateEta(const Matrix& zbars, std::span<const double> ys,
                              double ridge = kDefaultEtaRidge);

struct SldaOptions {
  double sigma2 = kDefaultSigma2;
  int sweeps = 100;
  double ridge = kDefaultEtaRidge;
};

struct SldaIteration {
  int iteration = 0;
  double mae = 0.0;
  double neg_loglik = 0.0;
};

// Stochastic EM: starting from a random assignment and eta = 0, each
// iteration runs one supervised Gibbs sweep and then refits eta on the
// resulting topic bars. `log` receives one entry per iteration.
SldaModel TrainSlda(const Corpus& corpus, std::span<const double> labels,
                    const LdaHyper& hyper, const SldaOptions& options,
                    std::uint64_t seed, std::vector<SldaIteration>* log = nullptr);

// Sum over documents of (y - eta . zbar)^2 / (2 sigma2) + ln(2 pi sigma2) / 2.
double ResponseNegLogLikelihood(std::span<const double> predictions,
                                std::span<const double> labels, double sigma2);

// Fold-in Gibbs for an unseen document with the topic-word counts held
// fixed. Returns zbar averaged over the final 20% of sweeps. Throws if the
// document has no in-vocabulary token.
TopicBar InferHeldout(const LdaModel& model, const BowDoc& doc, int sweeps,
                      std::uint64_t seed);

// eta . InferHeldout(doc).
double Predict(const SldaModel& model, const BowDoc& doc, int sweeps,
               std::uint64_t seed);

// Mean of |prediction - label|. Throws on empty or mismatched input.
double MeanAbsoluteError(std::span<const double> predictions,
                         std::span<const double> labels);

struct SyntheticLabeledCorpus {
  SyntheticCorpus data;
  Matrix zbar;  // M x K, from the true assignments
  std::vector<double> labels;
};

// GenerateCorpus, then y_d ~ N(eta_true . zbar_d, sigma2); sigma2 = 0 gives
// noiseless labels.
SyntheticLabeledCorpus GenerateLabeled(const LdaHyper& hyper,
                                       std::span<const double> eta_true,
                                       double sigma2, std::size_t vocab_size,
                                       std::size_t num_docs,
                                       std::size_t doc_length,
                                       std::uint64_t seed);

// LDA model JSON plus "eta" and "sigma2".
void SaveSldaModel(const SldaModel& model, std::ostream& out,
                   bool include_state = false);
SldaModel LoadSldaModel(std::istream& in, const Corpus* corpus = nullptr);

struct EtaReportRow {
  int topic = 0;
  double eta = 0.0;
  std::vector<TopicWord> words;
};

std::vector<EtaReportRow> MakeEtaReport(const SldaModel& model,
                                        std::size_t top_n);
// `topic<TAB>eta<TAB>word,word,...`, one row per topic.
void WriteEtaReport(std::ostream& out, std::span<const EtaReportRow> rows,
                    const Vocabulary& vocab);

}  // namespace topicforge

#endif  // TOPICFORGE_SLDA_H_

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

#include "topicforge/slda.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "model_json.h"
#include "topicforge/error.h"

namespace topicforge {
namespace {

bool AllFinite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(),
                     [](double x) { return std::isfinite(x); });
}

void ValidateSigma2(double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw Error("sLDA: sigma2 must be positive and finite");
  }
}

}  // namespace

TopicBar TopicBarOf(std::span<const int> assignments, int num_topics) {
  if (assignments.empty()) throw Error("sLDA: topic bar of an empty document");
  if (num_topics < 1) throw Error("sLDA: number of topics must be >= 1");
  TopicBar zbar(static_cast<std::size_t>(num_topics), 0.0);
  for (int k : assignments) {
    if (k < 0 || k >= num_topics) throw Error("sLDA: assignment outside [0, K)");
    zbar[static_cast<std::size_t>(k)] += 1.0;
  }
  const double n = static_cast<double>(assignments.size());
  for (double& x : zbar) x /= n;
  return zbar;
}

SldaModel::SldaModel(LdaModel base, std::vector<double> eta, double sigma2)
    : base_(std::move(base)), sigma2_(sigma2) {
  ValidateSigma2(sigma2_);
  set_eta(std::move(eta));
}

void SldaModel::set_eta(std::vector<double> eta) {
  if (eta.size() != static_cast<std::size_t>(base_.num_topics())) {
    throw Error("sLDA: eta must have one entry per topic");
  }
  if (!AllFinite(eta)) throw Error("sLDA: eta must be finite");
  eta_ = std::move(eta);
}

void SldaModel::ApplyResponse(std::size_t d, double y, int excluded_topic,
                              std::span<double> weights) const {
  const std::size_t K = eta_.size();
  const double n = static_cast<double>(base_.doc_length(d));
  double rest = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const auto count = base_.doc_topic_count(d, static_cast<int>(k)) -
                       (static_cast<int>(k) == excluded_topic ? 1 : 0);
    rest += eta_[k] * static_cast<double>(count);
  }
  // Work in log space relative to the best topic so the factor never
  // underflows for small sigma2.
  thread_local std::vector<double> log_factor;
  log_factor.resize(K);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    const double residual = y - (rest + eta_[k]) / n;
    log_factor[k] = -residual * residual / (2.0 * sigma2_);
    max_log = std::max(max_log, log_factor[k]);
  }
  for (std::size_t k = 0; k < K; ++k) {
    weights[k] *= std::exp(log_factor[k] - max_log);
  }
}

std::vector<double> SldaModel::Conditional(std::size_t d, std::size_t i,
                                           double y) const {
  if (!base_.has_state() || d >= base_.num_docs() || i >= base_.doc_length(d)) {
    throw Error("sLDA: token index out of range");
  }
  const int current = base_.assignments(d)[i];
  std::vector<double> p(eta_.size());
  base_.CollapsedWeights(d, base_.words(d)[i], current, p);
  ApplyResponse(d, y, current, p);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return p;
}

void SldaModel::Sweep(std::span<const double> labels) {
  if (!base_.has_state()) throw Error("sLDA: model has no sampler state");
  if (labels.size() != base_.num_docs()) {
    throw Error("sLDA: one label per document required");
  }
  std::vector<double> weights(eta_.size());
  for (std::size_t d = 0; d < base_.num_docs(); ++d) {
    const auto words = base_.words(d);
    for (std::size_t i = 0; i < words.size(); ++i) {
      base_.RemoveToken(d, i);
      base_.CollapsedWeights(d, words[i], -1, weights);
      ApplyResponse(d, labels[d], -1, weights);
      base_.AssignToken(d, i, static_cast<int>(base_.rng().Categorical(weights)));
    }
  }
}

TopicBar SldaModel::DocTopicBar(std::size_t d) const {
  return TopicBarOf(base_.assignments(d), base_.num_topics());
}

Matrix SldaModel::TopicBars() const {
  Matrix zbars(base_.num_docs(), eta_.size());
  for (std::size_t d = 0; d < base_.num_docs(); ++d) {
    const double n = static_cast<double>(base_.doc_length(d));
    for (std::size_t k = 0; k < eta_.size(); ++k) {
      zbars(d, k) =
          static_cast<double>(base_.doc_topic_count(d, static_cast<int>(k))) / n;
    }
  }
  return zbars;
}

double SldaModel::Predict(const TopicBar& zbar) const {
  if (zbar.size() != eta_.size()) throw Error("sLDA: topic bar has wrong size");
  return std::inner_product(eta_.begin(), eta_.end(), zbar.begin(), 0.0);
}

std::vector<double> UpdateEta(const Matrix& zbars, std::span<const double> ys,
                              double ridge) {
  const std::size_t M = zbars.rows();
  const std::size_t K = zbars.cols();
  if (M == 0 || K == 0) throw Error("update_eta: empty design matrix");
  if (ys.size() != M) throw Error("update_eta: one response per row required");
  if (!(ridge >= 0.0) || !AllFinite(zbars.data()) || !AllFinite(ys)) {
    throw Error("update_eta: non-finite input");
  }
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> Z(zbars.data().data(),
                                     static_cast<Eigen::Index>(M),
                                     static_cast<Eigen::Index>(K));
  const Eigen::Map<const Eigen::VectorXd> y(ys.data(),
                                            static_cast<Eigen::Index>(M));
  Eigen::MatrixXd gram = Z.transpose() * Z;
  gram.diagonal().array() += ridge;
  const Eigen::VectorXd rhs = Z.transpose() * y;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success) throw Error("update_eta: solve failed");
  const Eigen::VectorXd eta = ldlt.solve(rhs);
  std::vector<double> out(eta.data(), eta.data() + eta.size());
  if (!AllFinite(out)) throw Error("update_eta: singular system");
  return out;
}

double ResponseNegLogLikelihood(std::span<const double> predictions,
                                std::span<const double> labels, double sigma2) {
  if (predictions.size() != labels.size()) {
    throw Error("negative log-likelihood: length mismatch");
  }
  ValidateSigma2(sigma2);
  const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi * sigma2);
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double r = labels[i] - predictions[i];
    total += r * r / (2.0 * sigma2) + log_norm;
  }
  return total;
}

SldaModel TrainSlda(const Corpus& corpus, std::span<const double> labels,
                    const LdaHyper& hyper, const SldaOptions& options,
                    std::uint64_t seed, std::vector<SldaIteration>* log) {
  if (options.sweeps < 1) throw Error("sLDA: sweeps must be >= 1");
  if (labels.size() != corpus.docs.size()) {
    throw Error("sLDA: one label per document required");
  }
  if (!AllFinite(labels)) throw Error("sLDA: labels must be finite");
  SldaModel model(LdaModel::Init(corpus, hyper, seed),
                  std::vector<double>(static_cast<std::size_t>(hyper.num_topics), 0.0),
                  options.sigma2);
  if (log) log->clear();
  std::vector<double> predictions(labels.size());
  for (int iter = 1; iter <= options.sweeps; ++iter) {
    model.Sweep(labels);
    const Matrix zbars = model.TopicBars();
    model.set_eta(UpdateEta(zbars, labels, options.ridge));
    if (log) {
      for (std::size_t d = 0; d < labels.size(); ++d) {
        const auto row = zbars.row(d);
        predictions[d] = std::inner_product(row.begin(), row.end(),
                                            model.eta().begin(), 0.0);
      }
      log->push_back({iter, MeanAbsoluteError(predictions, labels),
                      ResponseNegLogLikelihood(predictions, labels,
                                               options.sigma2)});
    }
  }
  return model;
}

TopicBar InferHeldout(const LdaModel& model, const BowDoc& doc, int sweeps,
                      std::uint64_t seed) {
  if (sweeps < 1) throw Error("fold-in: sweeps must be >= 1");
  const auto K = static_cast<std::size_t>(model.num_topics());
  std::vector<TokenId> words;
  for (const BowEntry& e : doc) {
    if (e.id < 0 || static_cast<std::size_t>(e.id) >= model.vocab_size()) continue;
    words.insert(words.end(), static_cast<std::size_t>(std::max(e.count, 0)), e.id);
  }
  if (words.empty()) throw Error("fold-in: document has no in-vocabulary token");

  const LdaHyper& hyper = model.hyper();
  const double v_beta = static_cast<double>(model.vocab_size()) * hyper.beta;
  // The topic-word factor is fixed during fold-in; tabulate it per token.
  std::vector<double> phi(words.size() * K);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t k = 0; k < K; ++k) {
      phi[i * K + k] =
          (static_cast<double>(model.topic_word_count(static_cast<int>(k), words[i])) +
           hyper.beta) /
          (static_cast<double>(model.topic_total(static_cast<int>(k))) + v_beta);
    }
  }

  Rng rng(seed);
  std::vector<int> z(words.size());
  std::vector<std::int64_t> n_dk(K, 0);
  for (int& k : z) {
    k = static_cast<int>(rng.UniformIndex(K));
    ++n_dk[static_cast<std::size_t>(k)];
  }
  const int kept = std::max(1, (sweeps + 4) / 5);
  const int burn_in = sweeps - kept;
  TopicBar average(K, 0.0);
  std::vector<double> weights(K);
  for (int s = 0; s < sweeps; ++s) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      --n_dk[static_cast<std::size_t>(z[i])];
      for (std::size_t k = 0; k < K; ++k) {
        weights[k] = (static_cast<double>(n_dk[k]) + hyper.alpha) * phi[i * K + k];
      }
      z[i] = static_cast<int>(rng.Categorical(weights));
      ++n_dk[static_cast<std::size_t>(z[i])];
    }
    if (s >= burn_in) {
      for (std::size_t k = 0; k < K; ++k) {
        average[k] += static_cast<double>(n_dk[k]);
      }
    }
  }
  const double norm = static_cast<double>(kept) * static_cast<double>(words.size());
  for (double& x : average) x /= norm;
  return average;
}

double Predict(const SldaModel& model, const BowDoc& doc, int sweeps,
               std::uint64_t seed) {
  return model.Predict(InferHeldout(model.base(), doc, sweeps, seed));
}

double MeanAbsoluteError(std::span<const double> predictions,
                         std::span<const double> labels) {
  if (predictions.size() != labels.size()) throw Error("mae: length mismatch");
  if (labels.empty()) throw Error("mae: no predictions");
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    total += std::abs(predictions[i] - labels[i]);
  }
  return total / static_cast<double>(labels.size());
}

SyntheticLabeledCorpus GenerateLabeled(const LdaHyper& hyper,
                                       std::span<const double> eta_true,
                                       double sigma2, std::size_t vocab_size,
                                       std::size_t num_docs,
                                       std::size_t doc_length,
                                       std::uint64_t seed) {
  if (eta_true.size() != static_cast<std::size_t>(hyper.num_topics)) {
    throw Error("GenerateLabeled: eta must have one entry per topic");
  }
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw Error("GenerateLabeled: sigma2 must be non-negative");
  }
  SyntheticLabeledCorpus out;
  out.data = GenerateCorpus(hyper, vocab_size, num_docs, doc_length, seed);
  // Responses use their own stream so the documents match GenerateCorpus.
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  out.zbar = Matrix(num_docs, eta_true.size());
  out.labels.resize(num_docs);
  const double stddev = std::sqrt(sigma2);
  for (std::size_t d = 0; d < num_docs; ++d) {
    const TopicBar zbar = TopicBarOf(out.data.topics[d], hyper.num_topics);
    std::copy(zbar.begin(), zbar.end(), out.zbar.row(d).begin());
    const double mean =
        std::inner_product(zbar.begin(), zbar.end(), eta_true.begin(), 0.0);
    out.labels[d] = sigma2 == 0.0 ? mean : rng.Normal(mean, stddev);
  }
  return out;
}

void SaveSldaModel(const SldaModel& model, std::ostream& out,
                   bool include_state) {
  nlohmann::ordered_json j = internal::LdaToJson(model.base(), include_state);
  j["eta"] = model.eta();
  j["sigma2"] = model.sigma2();
  out << j.dump() << '\n';
}

SldaModel LoadSldaModel(std::istream& in, const Corpus* corpus) {
  nlohmann::json j;
  try {
    in >> j;
    LdaModel base = internal::LdaFromJson(j, corpus);
    return SldaModel(std::move(base), j.at("eta").get<std::vector<double>>(),
                     j.at("sigma2").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("sLDA model JSON: ") + e.what());
  }
}

std::vector<EtaReportRow> MakeEtaReport(const SldaModel& model,
                                        std::size_t top_n) {
  std::vector<EtaReportRow> rows;
  for (int k = 0; k < model.num_topics(); ++k) {
    rows.push_back({k, model.eta()[static_cast<std::size_t>(k)],
                    model.base().TopicWords(k, top_n)});
  }
  return rows;
}

void WriteEtaReport(std::ostream& out, std::span<const EtaReportRow> rows,
                    const Vocabulary& vocab) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::fixed << std::setprecision(6);
  for (const EtaReportRow& row : rows) {
    out << row.topic << '\t' << row.eta << '\t';
    for (std::size_t i = 0; i < row.words.size(); ++i) {
      if (i > 0) out << ',';
      out << vocab.token(row.words[i].id);
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace topicforge

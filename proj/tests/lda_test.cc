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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "topicforge/error.h"

namespace topicforge {
namespace {

// Documents "aab" and "bb" over {a, b}.
Corpus FixtureCorpus() { return Corpus{{{{0, 2}, {1, 1}}, {{1, 2}}}, 2}; }

// Builds a sampler whose assignments are exactly `z` (flattened by document).
LdaModel ModelWithState(const Corpus& corpus, const LdaHyper& hyper,
                        const std::vector<int>& z) {
  const std::size_t V = corpus.vocab_size;
  std::vector<std::int64_t> n_kw(static_cast<std::size_t>(hyper.num_topics) * V);
  std::size_t pos = 0;
  for (const BowDoc& doc : corpus.docs) {
    for (const BowEntry& e : doc) {
      for (int c = 0; c < e.count; ++c) ++n_kw[z[pos++] * V + e.id];
    }
  }
  LdaModel m = LdaModel::FromTopicCounts(hyper, V, n_kw, 1);
  m.AttachState(corpus, z);
  return m;
}

LdaModel FixtureModel() {
  return ModelWithState(FixtureCorpus(), {2, 0.5, 0.5}, {0, 1, 0, 1, 1});
}

TEST(LdaHyperTest, DefaultsAndValidation) {
  const LdaHyper h = LdaHyper::Defaults(20);
  EXPECT_EQ(h.num_topics, 20);
  EXPECT_DOUBLE_EQ(h.alpha, 2.5);
  EXPECT_DOUBLE_EQ(h.beta, 0.01);
  EXPECT_THROW((LdaHyper{0, 1.0, 0.1}).Validate(), Error);
  EXPECT_THROW((LdaHyper{2, 0.0, 0.1}).Validate(), Error);
  EXPECT_THROW((LdaHyper{2, 1.0, -0.1}).Validate(), Error);
}

TEST(LdaConditionalTest, MatchesHandComputedFixture) {
  const LdaModel m = FixtureModel();
  ASSERT_EQ(m.words(0).size(), 3u);
  EXPECT_EQ(m.words(0)[0], 0);
  EXPECT_EQ(m.words(0)[2], 1);

  auto p = m.Conditional(0, 0);
  EXPECT_NEAR(p[0], 0.4, 1e-12);
  EXPECT_NEAR(p[1], 0.6, 1e-12);
  p = m.Conditional(0, 2);
  EXPECT_NEAR(p[0], 0.2857142857142857, 1e-12);
  EXPECT_NEAR(p[1], 0.7142857142857143, 1e-12);
  p = m.Conditional(1, 0);
  EXPECT_NEAR(p[0], 0.25, 1e-12);
  EXPECT_NEAR(p[1], 0.75, 1e-12);
}

TEST(LdaConditionalTest, SingleTopicIsDegenerate) {
  const Corpus corpus = FixtureCorpus();
  LdaModel m = LdaModel::Init(corpus, {1, 0.5, 0.5}, 3);
  for (int s = 0; s < 3; ++s) m.Sweep();
  for (std::size_t d = 0; d < m.num_docs(); ++d) {
    for (std::size_t i = 0; i < m.doc_length(d); ++i) {
      EXPECT_EQ(m.Conditional(d, i), std::vector<double>{1.0});
      EXPECT_EQ(m.assignments(d)[i], 0);
    }
  }
}

TEST(LdaConditionalTest, DoesNotDisturbCounts) {
  const LdaModel m = FixtureModel();
  const auto before = m.topic_total(0);
  (void)m.Conditional(0, 1);
  EXPECT_EQ(m.topic_total(0), before);
  EXPECT_NO_THROW(m.CheckInvariants());
}

SyntheticCorpus SmallSynthetic(std::uint64_t seed) {
  return GenerateCorpus({4, 0.3, 0.1}, 30, 40, 25, seed);
}

TEST(LdaSweepTest, InvariantsHoldAfterEverySweep) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SyntheticCorpus data = SmallSynthetic(seed);
    LdaModel m = LdaModel::Init(data.corpus, {4, 0.3, 0.1}, seed);
    EXPECT_EQ(m.total_tokens(), data.corpus.TotalTokens());
    for (int s = 0; s < 10; ++s) {
      m.Sweep();
      ASSERT_NO_THROW(m.CheckInvariants());
      EXPECT_EQ(m.total_tokens(), data.corpus.TotalTokens());
    }
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
      const auto p = m.Conditional(d, 0);
      EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
      for (double x : p) EXPECT_GT(x, 0.0);
    }
  }
}

TEST(LdaSweepTest, SameSeedSameChain) {
  const SyntheticCorpus data = SmallSynthetic(9);
  const LdaModel a = TrainLda(data.corpus, {4, 0.3, 0.1}, 5, 77);
  const LdaModel b = TrainLda(data.corpus, {4, 0.3, 0.1}, 5, 77);
  const LdaModel c = TrainLda(data.corpus, {4, 0.3, 0.1}, 5, 78);
  bool differs = false;
  for (std::size_t d = 0; d < a.num_docs(); ++d) {
    const auto za = a.assignments(d);
    const auto zb = b.assignments(d);
    const auto zc = c.assignments(d);
    EXPECT_TRUE(std::equal(za.begin(), za.end(), zb.begin()));
    differs = differs || !std::equal(za.begin(), za.end(), zc.begin());
  }
  EXPECT_TRUE(differs);
}

TEST(LdaSweepTest, TrainingRaisesLikelihood) {
  const SyntheticCorpus data = GenerateCorpus({3, 0.1, 0.05}, 40, 80, 30, 5);
  const LdaModel init = LdaModel::Init(data.corpus, {3, 0.1, 0.05}, 5);
  std::vector<double> trace;
  const LdaModel trained = TrainLda(data.corpus, {3, 0.1, 0.05}, 50, 5, &trace);
  ASSERT_EQ(trace.size(), 50u);
  EXPECT_DOUBLE_EQ(trace.back(), trained.LogLikelihood(data.corpus));
  EXPECT_GT(trace.back(), init.LogLikelihood(data.corpus));
  EXPECT_THROW(TrainLda(data.corpus, {3, 0.1, 0.05}, 0, 5), Error);
}

TEST(LdaEstimatesTest, TopicWordsFromCounts) {
  const std::vector<std::int64_t> counts = {3, 1};
  const LdaModel m = LdaModel::FromTopicCounts({1, 0.5, 0.5}, 2, counts, 0);
  const auto words = m.TopicWords(0, 2);
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(words[0].id, 0);
  EXPECT_NEAR(words[0].prob, 0.7, 1e-12);
  EXPECT_EQ(words[1].id, 1);
  EXPECT_NEAR(words[1].prob, 0.3, 1e-12);
  EXPECT_EQ(m.TopicWords(0, 10).size(), 2u);
  EXPECT_FALSE(m.has_state());
}

TEST(LdaEstimatesTest, DistributionsAreNormalized) {
  const SyntheticCorpus data = SmallSynthetic(4);
  const LdaModel m = TrainLda(data.corpus, {4, 0.3, 0.1}, 5, 4);
  for (int k = 0; k < 4; ++k) {
    const auto phi = m.TopicDistribution(k);
    EXPECT_NEAR(std::accumulate(phi.begin(), phi.end(), 0.0), 1.0, 1e-12);
  }
  for (std::size_t d = 0; d < m.num_docs(); ++d) {
    const auto theta = m.DocTopics(d);
    EXPECT_NEAR(std::accumulate(theta.begin(), theta.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(LdaEstimatesTest, FixtureDocTopicsAndLikelihood) {
  const LdaModel m = FixtureModel();
  const auto theta = m.DocTopics(0);
  EXPECT_NEAR(theta[0], 2.5 / 4.0, 1e-15);
  EXPECT_NEAR(theta[1], 1.5 / 4.0, 1e-15);
  const Corpus corpus = FixtureCorpus();
  EXPECT_NEAR(m.LogLikelihood(corpus), -3.194519890459488, 1e-12);
  EXPECT_NEAR(m.Perplexity(corpus), 1.8944034333840203, 1e-12);
}

TEST(LdaGenerateTest, ShapesAndConsistency) {
  const SyntheticCorpus data = GenerateCorpus({3, 0.5, 0.2}, 20, 15, 12, 8);
  ASSERT_EQ(data.corpus.docs.size(), 15u);
  EXPECT_EQ(data.theta.rows(), 15u);
  EXPECT_EQ(data.phi.rows(), 3u);
  EXPECT_EQ(data.phi.cols(), 20u);
  for (std::size_t d = 0; d < 15; ++d) {
    EXPECT_EQ(DocLength(data.corpus.docs[d]), 12);
    ASSERT_EQ(data.tokens[d].size(), 12u);
    ASSERT_EQ(data.topics[d].size(), 12u);
    std::vector<std::int32_t> counts(20);
    for (TokenId w : data.tokens[d]) ++counts[w];
    for (const BowEntry& e : data.corpus.docs[d]) EXPECT_EQ(counts[e.id], e.count);
    const auto row = data.theta.row(d);
    EXPECT_NEAR(std::accumulate(row.begin(), row.end(), 0.0), 1.0, 1e-12);
  }
  EXPECT_NO_THROW(data.corpus.Validate());
  EXPECT_THROW(GenerateCorpus({3, 0.5, 0.2}, 0, 15, 12, 8), Error);
}

TEST(LdaGenerateTest, EmpiricalWordFrequenciesMatchPhi) {
  // 1000 documents of 100 tokens: 1e5 draws.
  const SyntheticCorpus data = GenerateCorpus({3, 1.0, 1.0}, 10, 1000, 100, 21);
  std::vector<std::vector<double>> count(3, std::vector<double>(10));
  std::vector<double> per_topic(3);
  std::vector<double> mean_theta(3);
  for (std::size_t d = 0; d < 1000; ++d) {
    for (std::size_t n = 0; n < 100; ++n) {
      count[data.topics[d][n]][data.tokens[d][n]] += 1;
      per_topic[data.topics[d][n]] += 1;
    }
    for (int k = 0; k < 3; ++k) mean_theta[k] += data.theta(d, k) / 1000.0;
  }
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(per_topic[k] / 1e5, mean_theta[k], 0.02);
    for (int w = 0; w < 10; ++w) {
      EXPECT_NEAR(count[k][w] / per_topic[k], data.phi(k, w), 0.02);
    }
  }
}

TEST(LdaIoTest, RoundTripWithAndWithoutState) {
  const SyntheticCorpus data = SmallSynthetic(12);
  const LdaModel m = TrainLda(data.corpus, {4, 0.3, 0.1}, 3, 12);

  std::stringstream light;
  SaveLdaModel(m, light);
  const LdaModel a = LoadLdaModel(light);
  EXPECT_FALSE(a.has_state());
  EXPECT_EQ(a.num_topics(), 4);
  EXPECT_EQ(a.vocab_size(), m.vocab_size());
  EXPECT_EQ(a.seed(), 12u);
  for (int k = 0; k < 4; ++k) {
    for (TokenId w = 0; w < 30; ++w) {
      EXPECT_EQ(a.topic_word_count(k, w), m.topic_word_count(k, w));
    }
  }

  std::stringstream full;
  SaveLdaModel(m, full, true);
  const LdaModel b = LoadLdaModel(full, &data.corpus);
  ASSERT_TRUE(b.has_state());
  for (std::size_t d = 0; d < m.num_docs(); ++d) {
    const auto zm = m.assignments(d);
    const auto zb = b.assignments(d);
    EXPECT_TRUE(std::equal(zm.begin(), zm.end(), zb.begin()));
  }
  EXPECT_DOUBLE_EQ(b.LogLikelihood(data.corpus), m.LogLikelihood(data.corpus));

  std::istringstream junk("{\"K\": 2}");
  EXPECT_THROW(LoadLdaModel(junk), Error);
}

TEST(LdaIoTest, AttachStateRejectsMismatch) {
  LdaModel m = FixtureModel();
  const std::vector<int> wrong_length = {0, 1};
  EXPECT_THROW(m.AttachState(FixtureCorpus(), wrong_length), Error);
  LdaModel n = FixtureModel();
  const std::vector<int> other = {1, 1, 1, 1, 1};
  EXPECT_THROW(n.AttachState(FixtureCorpus(), other), Error);
}

TEST(LdaReportTest, TabSeparatedRanks) {
  const std::vector<std::int64_t> counts = {3, 1};
  const LdaModel m = LdaModel::FromTopicCounts({1, 0.5, 0.5}, 2, counts, 0);
  const Vocabulary vocab = Vocabulary::FromParts({"apple", "pear"}, {1, 1}, 1);
  std::ostringstream out;
  WriteTopicReport(out, m, vocab, 5);
  EXPECT_EQ(out.str(), "0\t1\tapple\t0.700000\n0\t2\tpear\t0.300000\n");
}

}  // namespace
}  // namespace topicforge

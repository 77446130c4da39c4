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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "topicforge/error.h"

namespace topicforge {
namespace {

// Single document with words (0, 0, 1) and assignments (0, 1, 1).
SldaModel FixtureModel(std::vector<double> eta, double sigma2) {
  const Corpus corpus{{{{0, 2}, {1, 1}}}, 2};
  const std::vector<std::int64_t> n_kw = {1, 0, 1, 1};
  LdaModel base = LdaModel::FromTopicCounts({2, 0.5, 0.5}, 2, n_kw, 3);
  base.AttachState(corpus, std::vector<int>{0, 1, 1});
  return SldaModel(std::move(base), std::move(eta), sigma2);
}

// Textbook Gaussian elimination with partial pivoting on the normal equations.
std::vector<double> SolveNormalEquations(const Matrix& z, std::span<const double> y,
                                         double ridge) {
  const std::size_t k = z.cols();
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t d = 0; d < z.rows(); ++d) a[i][j] += z(d, i) * z(d, j);
    }
    a[i][i] += ridge;
    for (std::size_t d = 0; d < z.rows(); ++d) a[i][k] += z(d, i) * y[d];
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    for (std::size_t r = c + 1; r < k; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<double> x(k);
  for (std::size_t c = k; c-- > 0;) {
    double s = a[c][k];
    for (std::size_t j = c + 1; j < k; ++j) s -= a[c][j] * x[j];
    x[c] = s / a[c][c];
  }
  return x;
}

TEST(TopicBarTest, NormalizedCounts) {
  const std::vector<int> z = {0, 2, 2, 1};
  EXPECT_EQ(TopicBarOf(z, 3), (TopicBar{0.25, 0.25, 0.5}));
  EXPECT_THROW(TopicBarOf(std::vector<int>{}, 3), Error);
  EXPECT_THROW(TopicBarOf(std::vector<int>{3}, 3), Error);
}

TEST(SldaConditionalTest, MatchesHandComputedFixture) {
  const SldaModel m = FixtureModel({1.0, -1.0}, 0.25);
  const double expected[3][2] = {{0.94453845651650847, 0.05546154348349152},
                                 {0.9773631451913769, 0.022636854808622986},
                                 {0.93503083087133587, 0.064969169128664087}};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto p = m.Conditional(0, i, 1.0);
    EXPECT_NEAR(p[0], expected[i][0], 1e-12) << "token " << i;
    EXPECT_NEAR(p[1], expected[i][1], 1e-12) << "token " << i;
  }
}

TEST(SldaConditionalTest, ZeroEtaReducesToLda) {
  const SldaModel m = FixtureModel({0.0, 0.0}, 0.25);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto p = m.Conditional(0, i, 7.0);
    const auto q = m.base().Conditional(0, i);
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(p[k], q[k], 1e-12);
  }
}

TEST(SldaConditionalTest, HugeVarianceReducesToLda) {
  const SldaModel m = FixtureModel({1.0, -1.0}, 1e6);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto p = m.Conditional(0, i, 1.0);
    const auto q = m.base().Conditional(0, i);
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(p[k], q[k], 1e-6);
  }
}

TEST(SldaConditionalTest, ExtremeResponsesStayFinite) {
  const SldaModel m = FixtureModel({50.0, -50.0}, 1e-4);
  const auto p = m.Conditional(0, 0, 1000.0);
  EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
  for (double x : p) EXPECT_TRUE(std::isfinite(x));
  EXPECT_THROW(SldaModel(FixtureModel({0, 0}, 1).base(), {1.0}, 1.0), Error);
  EXPECT_THROW(SldaModel(FixtureModel({0, 0}, 1).base(), {1.0, 1.0}, 0.0), Error);
}

TEST(SldaSweepTest, ZeroEtaSweepMatchesLdaSweep) {
  const SyntheticLabeledCorpus s =
      GenerateLabeled({3, 0.2, 0.1}, std::vector<double>{1, -1, 0.5}, 0.01, 20, 30, 15, 4);
  LdaModel lda = LdaModel::Init(s.data.corpus, {3, 0.2, 0.1}, 11);
  SldaModel slda(LdaModel::Init(s.data.corpus, {3, 0.2, 0.1}, 11), {0, 0, 0}, 0.01);
  lda.Sweep();
  slda.Sweep(s.labels);
  for (std::size_t d = 0; d < lda.num_docs(); ++d) {
    const auto a = lda.assignments(d);
    const auto b = slda.base().assignments(d);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST(UpdateEtaTest, IdentityDesignRecoversLabels) {
  Matrix z(3, 3);
  for (int i = 0; i < 3; ++i) z(i, i) = 1.0;
  const std::vector<double> y = {2.0, -1.0, 0.5};
  const auto eta = UpdateEta(z, y, 0.0);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(eta[i], y[i], 1e-12);
}

TEST(UpdateEtaTest, AgreesWithIndependentSolver) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t K = 2 + trial % 5;
    const std::size_t M = K + 3 + trial % 11;
    Matrix z(M, K);
    std::vector<double> y(M);
    for (std::size_t d = 0; d < M; ++d) {
      double total = 0.0;
      for (std::size_t k = 0; k < K; ++k) total += z(d, k) = unit(gen);
      for (std::size_t k = 0; k < K; ++k) z(d, k) /= total;
      y[d] = 4.0 * unit(gen) - 2.0;
    }
    const auto got = UpdateEta(z, y);
    const auto want = SolveNormalEquations(z, y, kDefaultEtaRidge);
    for (std::size_t k = 0; k < K; ++k) {
      EXPECT_NEAR(got[k], want[k], 1e-8 * std::max(1.0, std::abs(want[k])));
    }
  }
}

TEST(UpdateEtaTest, SingularDesignStillSolvesWithRidge) {
  Matrix z(4, 2);
  for (int d = 0; d < 4; ++d) z(d, 0) = 1.0;
  const std::vector<double> y = {1, 1, 1, 1};
  const auto eta = UpdateEta(z, y);
  EXPECT_NEAR(eta[0], 1.0, 1e-5);
  EXPECT_NEAR(eta[1], 0.0, 1e-12);
  EXPECT_THROW(UpdateEta(z, std::vector<double>{1, 2}), Error);
}

TEST(PredictTest, DotProduct) {
  SldaModel m = FixtureModel({0.0, 0.0}, 1.0);
  const LdaModel& base = m.base();
  SldaModel three(LdaModel::FromTopicCounts({3, 0.5, 0.5}, 1,
                                            std::vector<std::int64_t>{1, 1, 1}, 0),
                  {2.0, -1.0, 0.0}, 1.0);
  EXPECT_DOUBLE_EQ(three.Predict({0.5, 0.25, 0.25}), 0.75);
  three.set_eta({4.0, -2.0, 0.0});
  EXPECT_DOUBLE_EQ(three.Predict({0.5, 0.25, 0.25}), 1.5);
  EXPECT_EQ(base.num_topics(), 2);
}

TEST(MaeTest, Examples) {
  const std::vector<double> a = {1, 1, 1};
  const std::vector<double> b = {-1, 1, -1};
  EXPECT_NEAR(MeanAbsoluteError(a, b), 4.0 / 3.0, 1e-15);
  EXPECT_EQ(MeanAbsoluteError(b, b), 0.0);
  EXPECT_THROW(MeanAbsoluteError(a, std::vector<double>{1}), Error);
}

TEST(ResponseLikelihoodTest, GaussianFormula) {
  const std::vector<double> pred = {0.0, 1.0};
  const std::vector<double> y = {1.0, 1.0};
  const double sigma2 = 0.5;
  const double want = 1.0 / (2 * sigma2) + std::log(2 * std::numbers::pi * sigma2);
  EXPECT_NEAR(ResponseNegLogLikelihood(pred, y, sigma2), want, 1e-12);
}

// Exact posterior mean of z-bar for a fold-in document under fixed phi.
std::vector<double> ExactFoldInMean(const LdaModel& model,
                                    const std::vector<TokenId>& words) {
  const int K = model.num_topics();
  const double alpha = model.hyper().alpha;
  std::vector<double> mean(K, 0.0);
  double norm = 0.0;
  std::vector<int> z(words.size(), 0);
  while (true) {
    std::vector<int> n(K, 0);
    double weight = 1.0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      // Sequential Polya-urn product gives the Dirichlet-multinomial factor.
      weight *= (n[z[i]] + alpha) * model.Phi(z[i], words[i]);
      ++n[z[i]];
    }
    norm += weight;
    for (int k = 0; k < K; ++k) mean[k] += weight * n[k] / words.size();
    std::size_t pos = 0;
    while (pos < z.size() && ++z[pos] == K) z[pos++] = 0;
    if (pos == z.size()) break;
  }
  for (double& m : mean) m /= norm;
  return mean;
}

TEST(FoldInTest, AverageMatchesExactPosteriorMean) {
  const std::vector<std::int64_t> n_kw = {8, 1, 1, 1, 1, 8};  // K=2, V=3
  const LdaModel model = LdaModel::FromTopicCounts({2, 0.7, 0.3}, 3, n_kw, 0);
  const BowDoc doc = {{0, 2}, {1, 1}, {2, 2}};
  const std::vector<TokenId> words = {0, 0, 1, 2, 2};
  const auto exact = ExactFoldInMean(model, words);
  std::vector<double> avg(2, 0.0);
  const int runs = 2000;
  for (int r = 0; r < runs; ++r) {
    const TopicBar zb = InferHeldout(model, doc, 30, 1000 + r);
    for (int k = 0; k < 2; ++k) avg[k] += zb[k] / runs;
  }
  const double tv = 0.5 * (std::abs(avg[0] - exact[0]) + std::abs(avg[1] - exact[1]));
  EXPECT_LE(tv, 0.05);
}

TEST(FoldInTest, DeterministicAndValidated) {
  const std::vector<std::int64_t> n_kw = {3, 1, 1, 3};
  const LdaModel model = LdaModel::FromTopicCounts({2, 0.5, 0.5}, 2, n_kw, 0);
  const BowDoc doc = {{0, 3}, {1, 1}};
  EXPECT_EQ(InferHeldout(model, doc, 10, 5), InferHeldout(model, doc, 10, 5));
  const TopicBar zb = InferHeldout(model, doc, 10, 5);
  EXPECT_NEAR(zb[0] + zb[1], 1.0, 1e-12);
  EXPECT_THROW(InferHeldout(model, BowDoc{{7, 1}}, 10, 5), Error);
  EXPECT_THROW(InferHeldout(model, doc, 0, 5), Error);
}

TEST(GenerateLabeledTest, NoiselessLabelsAreLinear) {
  const std::vector<double> eta = {2, -2, 1};
  const auto s = GenerateLabeled({3, 0.5, 0.1}, eta, 0.0, 20, 50, 10, 8);
  for (std::size_t d = 0; d < 50; ++d) {
    double want = 0.0;
    for (int k = 0; k < 3; ++k) want += eta[k] * s.zbar(d, k);
    EXPECT_DOUBLE_EQ(s.labels[d], want);
  }
  const SyntheticCorpus plain = GenerateCorpus({3, 0.5, 0.1}, 20, 50, 10, 8);
  EXPECT_EQ(plain.tokens, s.data.tokens);
}

TEST(GenerateLabeledTest, NoiseHasRequestedVariance) {
  const std::vector<double> eta = {1, -1};
  const auto s = GenerateLabeled({2, 0.5, 0.1}, eta, 0.04, 10, 10000, 5, 3);
  double sum = 0.0;
  double sq = 0.0;
  for (std::size_t d = 0; d < 10000; ++d) {
    const double r = s.labels[d] - (s.zbar(d, 0) - s.zbar(d, 1));
    sum += r;
    sq += r * r;
  }
  EXPECT_NEAR(sum / 1e4, 0.0, 0.05);
  EXPECT_NEAR(sq / 1e4, 0.04, 0.005);
}

TEST(TrainSldaTest, TrainingMaeImproves) {
  const std::vector<double> eta = {2, -2, 1};
  const auto s = GenerateLabeled({3, 0.1, 0.05}, eta, 0.01, 30, 150, 30, 6);
  std::vector<SldaIteration> log;
  SldaOptions options;
  options.sweeps = 40;
  const SldaModel m = TrainSlda(s.data.corpus, s.labels, {3, 0.1, 0.05}, options, 6, &log);
  ASSERT_EQ(log.size(), 40u);
  EXPECT_EQ(log.front().iteration, 1);
  EXPECT_LT(log.back().mae, log.front().mae);
  EXPECT_NO_THROW(m.base().CheckInvariants());
  EXPECT_THROW(TrainSlda(s.data.corpus, std::vector<double>{1.0}, {3, 0.1, 0.05},
                         options, 6),
               Error);
}

TEST(SldaIoTest, RoundTripAndEtaReport) {
  const std::vector<double> eta = {1, -1};
  const auto s = GenerateLabeled({2, 0.3, 0.1}, eta, 0.01, 4, 20, 8, 2);
  SldaOptions options;
  options.sweeps = 3;
  const SldaModel m = TrainSlda(s.data.corpus, s.labels, {2, 0.3, 0.1}, options, 2);
  std::stringstream buf;
  SaveSldaModel(m, buf);
  const SldaModel back = LoadSldaModel(buf);
  EXPECT_EQ(back.eta(), m.eta());
  EXPECT_EQ(back.sigma2(), m.sigma2());
  EXPECT_EQ(back.num_topics(), 2);

  const auto rows = MakeEtaReport(m, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].words.size(), 2u);
  const Vocabulary vocab = Vocabulary::FromParts({"a", "b", "c", "d"}, {1, 1, 1, 1}, 1);
  std::ostringstream out;
  WriteEtaReport(out, rows, vocab);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\t'), 4);
}

}  // namespace
}  // namespace topicforge

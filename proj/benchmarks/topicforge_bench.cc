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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "topicforge/lda.h"
#include "topicforge/sentiment.h"
#include "topicforge/slda.h"
#include "topicforge/textprep.h"

namespace topicforge {
namespace {

const std::string& SampleTweet() {
  static const std::string kTweet =
      "RT @TEN_GOP: Hillary, Obama and the refugees are running the country "
      "into the ground!!! #MAGA #IslamKills https://t.co/abc123 3.88 times";
  return kTweet;
}

void BM_Tokenize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Tokenize(SampleTweet()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(SampleTweet().size()));
}
BENCHMARK(BM_Tokenize);

void BM_Preprocess(benchmark::State& state) {
  const Preprocessor preprocess;
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(SampleTweet()));
}
BENCHMARK(BM_Preprocess);

void BM_LdaSweep(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const LdaHyper hyper{K, 0.1, 0.01};
  const SyntheticCorpus data = GenerateCorpus(hyper, 1000, 500, 50, 1);
  LdaModel model = LdaModel::Init(data.corpus, hyper, 2);
  for (auto _ : state) model.Sweep();
  state.SetItemsProcessed(state.iterations() * data.corpus.TotalTokens());
}
BENCHMARK(BM_LdaSweep)->Arg(5)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SldaSweep(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const LdaHyper hyper{K, 0.1, 0.01};
  std::vector<double> eta(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) eta[k] = (k % 2 ? -1.0 : 1.0) * (1.0 + k % 3);
  const SyntheticLabeledCorpus s = GenerateLabeled(hyper, eta, 0.01, 1000, 500, 50, 1);
  SldaModel model(LdaModel::Init(s.data.corpus, hyper, 2), eta, 0.01);
  for (auto _ : state) model.Sweep(s.labels);
  state.SetItemsProcessed(state.iterations() * s.data.corpus.TotalTokens());
}
BENCHMARK(BM_SldaSweep)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EnsembleClassify(benchmark::State& state) {
  std::vector<TermList> docs;
  std::vector<Polarity> labels;
  const std::vector<std::string> words = {"love", "hate", "day", "game", "sad", "fun"};
  for (int i = 0; i < 400; ++i) {
    docs.push_back({words[i % 6], words[(i * 7) % 6], words[(i * 3 + 1) % 6]});
    labels.push_back(i % 2 ? Polarity::kPositive : Polarity::kNegative);
  }
  const EnsembleModel model = TrainEnsemble(docs, labels, 100);
  for (auto _ : state) benchmark::DoNotOptimize(model.Classify(docs[17]));
}
BENCHMARK(BM_EnsembleClassify);

}  // namespace
}  // namespace topicforge

BENCHMARK_MAIN();

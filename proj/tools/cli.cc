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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "topicforge/corpus.h"
#include "topicforge/diagnostics.h"
#include "topicforge/error.h"
#include "topicforge/ingest.h"
#include "topicforge/lda.h"
#include "topicforge/sentiment.h"
#include "topicforge/slda.h"
#include "topicforge/textprep.h"

namespace topicforge::cli {
namespace {

namespace fs = std::filesystem;

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<const char*> inputs;  // positional argument names
};

const std::vector<Subcommand>& Subcommands() {
  static const std::vector<Subcommand> kSubcommands = {
      {"preprocess", "Clean troll tweets and write corpus.tsv and vocab.json",
       {"tweets.csv"}},
      {"lda-train", "Fit LDA on troll tweets", {"tweets.csv"}},
      {"lda-topics", "Print the top words of a saved LDA model",
       {"model.json", "vocab.json"}},
      {"slda-train", "Fit sLDA on the training split of labeled troll tweets",
       {"tweets.csv"}},
      {"slda-eval", "Score a saved sLDA model on the held-out split",
       {"model.json", "vocab.json", "tweets.csv"}},
      {"slda-predict", "Predict ideology scores for tweets",
       {"model.json", "vocab.json", "tweets.csv"}},
      {"senti-train", "Train the five-classifier sentiment ensemble",
       {"sentiment.csv"}},
      {"senti-classify",
       "Classify tweets (.csv with a content column) or text lines",
       {"model.json", "input"}},
      {"report", "Regenerate topic and eta reports from a model directory",
       {"model_dir"}},
  };
  return kSubcommands;
}

std::string FormatDouble(double x, const char* format = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, x);
  return buf;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Destination for one named result. With no output directory the result
// goes to the caller's stream so single-output subcommands can be piped.
class Outputs {
 public:
  Outputs(const RunConfig& config, std::ostream& stdout_stream)
      : dir_(config.out_dir), stdout_(stdout_stream) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }

  bool to_directory() const { return !dir_.empty(); }

  void Write(const std::string& name,
             const std::function<void(std::ostream&)>& writer) {
    if (dir_.empty()) {
      writer(stdout_);
      return;
    }
    const fs::path path = fs::path(dir_) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    writer(out);
    out.flush();
    if (!out) throw Error("failed writing " + path.string());
  }

 private:
  std::string dir_;
  std::ostream& stdout_;
};

LdaHyper HyperOf(const RunConfig& c) {
  LdaHyper h = LdaHyper::Defaults(c.topics);
  if (c.alpha) h.alpha = *c.alpha;
  h.beta = c.beta;
  h.Validate();
  return h;
}

VocabFilter FilterOf(const RunConfig& c) {
  return VocabFilter{c.no_below, c.no_above, c.keep_n};
}

std::vector<LabeledDoc> LoadLabeledTweets(const RunConfig& c,
                                          const std::string& path,
                                          Diagnostics* diag) {
  std::vector<TrollRecord> records = FilterRecords(LoadTrollCsv(path, diag));
  if (c.year) records = SliceByYear(records, *c.year, diag);
  return LabelRecords(records, Preprocessor(), diag);
}

BowDoc ToBow(const Vocabulary& vocab, const TermList& terms, bool tfidf) {
  BowDoc bow = DocToBow(vocab, terms);
  if (tfidf) bow = RoundTfIdf(TfIdfTransform(vocab, bow));
  return bow;
}

// Corpus over `vocab` for the documents that keep at least one term.
// `kept` receives the indices of those documents.
Corpus BuildCorpus(const Vocabulary& vocab, const std::vector<LabeledDoc>& docs,
                   bool tfidf, std::vector<std::size_t>* kept,
                   Diagnostics* diag) {
  Corpus corpus;
  corpus.vocab_size = vocab.size();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    BowDoc bow = ToBow(vocab, docs[i].terms, tfidf);
    if (bow.empty()) {
      diag->Skip("no in-vocabulary tokens");
      continue;
    }
    corpus.docs.push_back(std::move(bow));
    kept->push_back(i);
  }
  if (corpus.docs.empty()) throw Error("no documents left after vocabulary filtering");
  return corpus;
}

Vocabulary FitVocabulary(const RunConfig& c, const std::vector<LabeledDoc>& docs) {
  std::vector<TermList> terms;
  terms.reserve(docs.size());
  for (const LabeledDoc& d : docs) terms.push_back(d.terms);
  Vocabulary vocab = FilterVocabulary(BuildVocabulary(terms), FilterOf(c));
  if (vocab.empty()) throw Error("vocabulary is empty after filtering");
  return vocab;
}

Vocabulary LoadVocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return Vocabulary::ReadJson(in);
}

void CheckVocabulary(const Vocabulary& vocab, std::size_t model_vocab) {
  if (vocab.size() != model_vocab) {
    throw Error("vocabulary has " + std::to_string(vocab.size()) +
                " terms but the model expects " + std::to_string(model_vocab));
  }
}

struct SplitDocs {
  std::vector<LabeledDoc> train;
  std::vector<LabeledDoc> test;
};

SplitDocs SplitLabeled(const RunConfig& c, std::vector<LabeledDoc> docs) {
  if (docs.size() < 2) throw Error("need at least two labeled documents to split");
  auto [train, test] = SplitTrainTest(std::move(docs), c.train_frac, c.seed);
  if (train.empty() || test.empty()) {
    throw Error("train fraction leaves an empty train or test split");
  }
  return {std::move(train), std::move(test)};
}

int RunPreprocess(const RunConfig& c, Outputs& outputs, std::ostream& err) {
  Diagnostics diag;
  const std::vector<LabeledDoc> docs = LoadLabeledTweets(c, c.inputs[0], &diag);
  outputs.Write("corpus.tsv", [&](std::ostream& out) {
    for (const LabeledDoc& d : docs) {
      out << FormatDouble(d.y, "%g") << '\t';
      for (std::size_t i = 0; i < d.terms.size(); ++i) {
        out << (i ? " " : "") << d.terms[i];
      }
      out << '\n';
    }
  });
  if (outputs.to_directory() && !docs.empty()) {
    const Vocabulary vocab = FitVocabulary(c, docs);
    outputs.Write("vocab.json", [&](std::ostream& out) { vocab.WriteJson(out); });
  }
  diag.Write(err);
  return kExitOk;
}

int RunLdaTrain(const RunConfig& c, Outputs& outputs, std::ostream& err) {
  Diagnostics diag;
  const std::vector<LabeledDoc> docs = LoadLabeledTweets(c, c.inputs[0], &diag);
  if (docs.empty()) throw Error("no usable documents in " + c.inputs[0]);
  const Vocabulary vocab = FitVocabulary(c, docs);
  std::vector<std::size_t> kept;
  const Corpus corpus = BuildCorpus(vocab, docs, c.tfidf, &kept, &diag);
  std::vector<double> trace;
  const LdaModel model = TrainLda(corpus, HyperOf(c), c.iters, c.seed, &trace);

  const double tokens = static_cast<double>(corpus.TotalTokens());
  outputs.Write("model.json",
                [&](std::ostream& out) { SaveLdaModel(model, out, c.save_state); });
  outputs.Write("vocab.json", [&](std::ostream& out) { vocab.WriteJson(out); });
  outputs.Write("topics.tsv",
                [&](std::ostream& out) { WriteTopicReport(out, model, vocab, c.top_n); });
  outputs.Write("train_log.csv", [&](std::ostream& out) {
    out << "iter,loglik,perplexity\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
      out << i + 1 << ',' << FormatDouble(trace[i]) << ','
          << FormatDouble(std::exp(-trace[i] / tokens)) << '\n';
    }
  });
  diag.Write(err);
  return kExitOk;
}

int RunLdaTopics(const RunConfig& c, Outputs& outputs, std::ostream&) {
  std::ifstream in(c.inputs[0]);
  if (!in) throw Error("cannot open " + c.inputs[0]);
  const LdaModel model = LoadLdaModel(in);
  const Vocabulary vocab = LoadVocabulary(c.inputs[1]);
  CheckVocabulary(vocab, model.vocab_size());
  outputs.Write("topics.tsv",
                [&](std::ostream& out) { WriteTopicReport(out, model, vocab, c.top_n); });
  return kExitOk;
}

int RunSldaTrain(const RunConfig& c, Outputs& outputs, std::ostream& err) {
  Diagnostics diag;
  SplitDocs split = SplitLabeled(c, LoadLabeledTweets(c, c.inputs[0], &diag));
  const Vocabulary vocab = FitVocabulary(c, split.train);
  std::vector<std::size_t> kept;
  const Corpus corpus = BuildCorpus(vocab, split.train, c.tfidf, &kept, &diag);
  std::vector<double> labels;
  labels.reserve(kept.size());
  for (std::size_t i : kept) labels.push_back(split.train[i].y);

  SldaOptions options;
  options.sigma2 = c.sigma2;
  options.sweeps = c.iters;
  std::vector<SldaIteration> log;
  const SldaModel model = TrainSlda(corpus, labels, HyperOf(c), options, c.seed, &log);

  outputs.Write("model.json",
                [&](std::ostream& out) { SaveSldaModel(model, out, c.save_state); });
  outputs.Write("vocab.json", [&](std::ostream& out) { vocab.WriteJson(out); });
  outputs.Write("topics.tsv", [&](std::ostream& out) {
    WriteTopicReport(out, model.base(), vocab, c.top_n);
  });
  outputs.Write("eta_report.tsv", [&](std::ostream& out) {
    WriteEtaReport(out, MakeEtaReport(model, c.top_n), vocab);
  });
  outputs.Write("train_log.csv", [&](std::ostream& out) {
    out << "iter,mae,neg_loglik\n";
    for (const SldaIteration& it : log) {
      out << it.iteration << ',' << FormatDouble(it.mae) << ','
          << FormatDouble(it.neg_loglik) << '\n';
    }
  });
  diag.Write(err);
  return kExitOk;
}

SldaModel LoadSlda(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return LoadSldaModel(in);
}

int RunSldaEval(const RunConfig& c, Outputs& outputs, std::ostream& err) {
  const SldaModel model = LoadSlda(c.inputs[0]);
  const Vocabulary vocab = LoadVocabulary(c.inputs[1]);
  CheckVocabulary(vocab, model.base().vocab_size());
  Diagnostics diag;
  const SplitDocs split = SplitLabeled(c, LoadLabeledTweets(c, c.inputs[2], &diag));

  double train_mean = 0.0;
  for (const LabeledDoc& d : split.train) train_mean += d.y;
  train_mean /= static_cast<double>(split.train.size());

  std::vector<double> predictions;
  std::vector<double> labels;
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    const BowDoc bow = ToBow(vocab, split.test[i].terms, c.tfidf);
    if (bow.empty()) {
      diag.Skip("no in-vocabulary tokens");
      continue;
    }
    predictions.push_back(Predict(model, bow, c.iters, c.seed + i));
    labels.push_back(split.test[i].y);
  }
  if (labels.empty()) throw Error("no held-out document shares the model vocabulary");
  const std::vector<double> baseline(labels.size(), train_mean);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    agree += (predictions[i] > 0.0) == (labels[i] > 0.0);
  }
  outputs.Write("metrics.csv", [&](std::ostream& out) {
    out << "metric,value\n";
    out << "mae," << FormatDouble(MeanAbsoluteError(predictions, labels)) << '\n';
    out << "baseline_mae," << FormatDouble(MeanAbsoluteError(baseline, labels)) << '\n';
    out << "neg_loglik,"
        << FormatDouble(ResponseNegLogLikelihood(predictions, labels, model.sigma2()))
        << '\n';
    out << "sign_agreement,"
        << FormatDouble(static_cast<double>(agree) / static_cast<double>(labels.size()))
        << '\n';
    out << "num_docs," << labels.size() << '\n';
  });
  diag.Write(err);
  return kExitOk;
}

int RunSldaPredict(const RunConfig& c, Outputs& outputs, std::ostream& err) {
  const SldaModel model = LoadSlda(c.inputs[0]);
  const Vocabulary vocab = LoadVocabulary(c.inputs[1]);
  CheckVocabulary(vocab, model.base().vocab_size());
  Diagnostics diag;
  std::vector<TrollRecord> records = LoadTrollCsv(c.inputs[2], &diag);
  const Preprocessor preprocess;
  outputs.Write("predictions.tsv", [&](std::ostream& out) {
    out << "doc_id\tprediction\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (c.year) {
        const auto t = ParsePublishDate(records[i].publish_date);
        if (!t || t->year != *c.year) continue;
      }
      const BowDoc bow = ToBow(vocab, preprocess(records[i].content), c.tfidf);
      if (bow.empty()) {
        diag.Skip("no in-vocabulary tokens");
        continue;
      }
      out << i << '\t' << FormatDouble(Predict(model, bow, c.iters, c.seed + i), "%.6f")
          << '\n';
    }
  });
  diag.Write(err);
  return kExitOk;
}

int RunSentiTrain(const RunConfig& c, Outputs& outputs, std::ostream& err) {
  Diagnostics diag;
  const std::vector<SentimentRecord> records =
      LoadSentimentCsv(c.inputs[0], c.fraction, c.seed, &diag);
  std::vector<std::pair<TermList, Polarity>> docs;
  const Preprocessor preprocess;
  for (const SentimentRecord& r : records) docs.emplace_back(preprocess(r.text), r.polarity);
  if (docs.size() < 2) throw Error("need at least two sentiment records");
  auto [train, test] = SplitTrainTest(std::move(docs), c.train_frac, c.seed);

  std::vector<TermList> train_terms;
  std::vector<Polarity> train_labels;
  for (auto& [terms, y] : train) {
    train_terms.push_back(terms);
    train_labels.push_back(y);
  }
  TrainConfig config;
  config.seed = c.seed;
  const EnsembleModel model = TrainEnsemble(train_terms, train_labels, c.features, config);

  // Column 0..4 are the members, column 5 the majority vote.
  std::vector<std::vector<Polarity>> predicted(6);
  std::vector<Polarity> gold;
  for (const auto& [terms, y] : test) {
    const auto votes = model.Votes(terms);
    for (std::size_t m = 0; m < 5; ++m) predicted[m].push_back(votes[m]);
    predicted[5].push_back(Vote(votes).polarity);
    gold.push_back(y);
  }
  outputs.Write("model.json", [&](std::ostream& out) { SaveEnsemble(model, out); });
  outputs.Write("metrics.csv", [&](std::ostream& out) {
    out << "classifier,accuracy,f1_micro\n";
    if (gold.empty()) return;
    for (std::size_t m = 0; m < 6; ++m) {
      const ClassificationMetrics metrics = Evaluate(predicted[m], gold);
      out << (m < 5 ? std::string(KindName(model.members[m].kind())) : "ensemble")
          << ',' << FormatDouble(metrics.accuracy, "%.6f") << ','
          << FormatDouble(metrics.f1_micro, "%.6f") << '\n';
    }
  });
  diag.Write(err);
  return kExitOk;
}

std::vector<std::string> ReadClassifyInput(const std::string& path, Diagnostics* diag) {
  std::vector<std::string> texts;
  if (fs::path(path).extension() == ".csv") {
    for (TrollRecord& r : LoadTrollCsv(path, diag)) texts.push_back(std::move(r.content));
    return texts;
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    texts.push_back(line);
  }
  return texts;
}

int RunSentiClassify(const RunConfig& c, Outputs& outputs, std::ostream& err) {
  std::ifstream in(c.inputs[0]);
  if (!in) throw Error("cannot open " + c.inputs[0]);
  const EnsembleModel model = LoadEnsemble(in);
  Diagnostics diag;
  const std::vector<std::string> texts = ReadClassifyInput(c.inputs[1], &diag);
  const Preprocessor preprocess;
  outputs.Write("predictions.tsv", [&](std::ostream& out) {
    out << "doc_id\tpolarity\tconfidence\n";
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const SentimentPrediction p = model.Classify(preprocess(texts[i]));
      out << i << '\t' << PolarityName(p.polarity) << '\t'
          << FormatDouble(p.confidence, "%.1f") << '\n';
    }
  });
  diag.Write(err);
  return kExitOk;
}

int RunReport(const RunConfig& c, std::ostream& out_stream, std::ostream&) {
  const fs::path dir = c.inputs[0];
  RunConfig target = c;
  if (target.out_dir.empty()) target.out_dir = dir.string();
  Outputs outputs(target, out_stream);
  const std::string text = ReadFile(dir / "model.json");
  const Vocabulary vocab = LoadVocabulary((dir / "vocab.json").string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("model JSON: ") + e.what());
  }
  std::istringstream in(text);
  if (j.contains("eta")) {
    const SldaModel model = LoadSldaModel(in);
    CheckVocabulary(vocab, model.base().vocab_size());
    outputs.Write("topics.tsv", [&](std::ostream& out) {
      WriteTopicReport(out, model.base(), vocab, c.top_n);
    });
    outputs.Write("eta_report.tsv", [&](std::ostream& out) {
      WriteEtaReport(out, MakeEtaReport(model, c.top_n), vocab);
    });
  } else {
    const LdaModel model = LoadLdaModel(in);
    CheckVocabulary(vocab, model.vocab_size());
    outputs.Write("topics.tsv",
                  [&](std::ostream& out) { WriteTopicReport(out, model, vocab, c.top_n); });
  }
  return kExitOk;
}

// Subcommands that always produce several files write them into the
// current directory when no output directory is given.
bool WritesSeveralFiles(const std::string& sub) {
  return sub == "lda-train" || sub == "slda-train" || sub == "senti-train";
}

}  // namespace

ParseOutcome ParseArgs(int argc, const char* const* argv, std::ostream& out,
                       std::ostream& err) {
  RunConfig config;
  double alpha = 0.0;
  int year = 0;

  CLI::App app{"Topic and sentiment modeling for troll tweets", "topicforge"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key=value file; keys are long flag names");

  app.add_option("-o,--out-dir", config.out_dir, "Directory for output files");
  app.add_option("--topics", config.topics, "Number of topics K")
      ->check(CLI::PositiveNumber);
  app.add_option("--iters", config.iters, "Gibbs sweeps / EM iterations / fold-in sweeps")
      ->check(CLI::PositiveNumber);
  auto* alpha_opt = app.add_option("--alpha", alpha, "Document-topic prior (default 50/K)")
                        ->check(CLI::PositiveNumber);
  app.add_option("--beta", config.beta, "Topic-word prior")->check(CLI::PositiveNumber);
  app.add_option("--sigma2", config.sigma2, "Response variance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "Random seed")->envname("TOPICFORGE_SEED");
  auto* year_opt = app.add_option("--year", year, "Keep tweets published in this year");
  app.add_flag("--tfidf", config.tfidf, "Round tf-idf weights into the count corpus");
  app.add_option("--no-below", config.no_below, "Minimum document frequency")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--no-above", config.no_above, "Maximum document-frequency fraction")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--keep-n", config.keep_n, "Vocabulary size cap");
  app.add_option("--train-frac", config.train_frac, "Training share of the split")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--features", config.features, "Sentiment feature count")
      ->check(CLI::PositiveNumber);
  app.add_option("--fraction", config.fraction, "Share of the sentiment file to sample")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--top-n", config.top_n, "Words per topic in reports")
      ->check(CLI::PositiveNumber);
  app.add_flag("--save-state", config.save_state,
               "Store topic assignments in model.json");

  for (const Subcommand& s : Subcommands()) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("inputs", config.inputs, "Input files")
        ->required()
        ->expected(static_cast<int>(s.inputs.size()));
    sub->callback([&config, name = s.name] { config.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
    if (!(config.train_frac > 0.0 && config.train_frac < 1.0)) {
      throw CLI::ValidationError("--train-frac", "must lie strictly between 0 and 1");
    }
    if (!(config.no_above > 0.0)) {
      throw CLI::ValidationError("--no-above", "must be positive");
    }
    if (!(config.fraction > 0.0)) {
      throw CLI::ValidationError("--fraction", "must be positive");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitUsage};
  }
  if (alpha_opt->count() > 0) config.alpha = alpha;
  if (year_opt->count() > 0) config.year = year;
  return {config, kExitOk};
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  using Handler = int (*)(const RunConfig&, Outputs&, std::ostream&);
  static const std::map<std::string, Handler> kHandlers = {
      {"preprocess", RunPreprocess},   {"lda-train", RunLdaTrain},
      {"lda-topics", RunLdaTopics},    {"slda-train", RunSldaTrain},
      {"slda-eval", RunSldaEval},      {"slda-predict", RunSldaPredict},
      {"senti-train", RunSentiTrain},  {"senti-classify", RunSentiClassify},
  };
  try {
    if (config.subcommand == "report") return RunReport(config, out, err);
    const auto it = kHandlers.find(config.subcommand);
    if (it == kHandlers.end()) {
      err << "topicforge: unknown subcommand '" << config.subcommand << "'\n";
      return kExitUsage;
    }
    RunConfig effective = config;
    if (effective.out_dir.empty() && WritesSeveralFiles(config.subcommand)) {
      effective.out_dir = ".";
    }
    Outputs outputs(effective, out);
    return it->second(effective, outputs, err);
  } catch (const std::exception& e) {
    err << "topicforge: " << e.what() << '\n';
    return kExitFailure;
  }
}

int Main(int argc, const char* const* argv) {
  const ParseOutcome parsed = ParseArgs(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_code;
  return Run(*parsed.config, std::cout, std::cerr);
}

}  // namespace topicforge::cli

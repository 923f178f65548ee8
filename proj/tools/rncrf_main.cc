// Copyright 2026 The RNCRF Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   rncrf stats --train corpus.conll
//   rncrf extract-features --train corpus.conll --out lists.txt
//   rncrf pretrain --train corpus.conll --out pre.model [options]
//   rncrf train --train corpus.conll [--dev dev.conll] --out model [options]
//   rncrf tag --model model --input test.conll [--out tagged.conll]
//   rncrf eval --gold gold.conll --pred pred.conll [--kv]
//   rncrf gradcheck --dim 6 --seed 1 [--window 1 --mode rncrf ...]
//   rncrf info --model model
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <glog/logging.h>

#include "rncrf/checkpoint.h"
#include "rncrf/corpus.h"
#include "rncrf/errors.h"
#include "rncrf/eval.h"
#include "rncrf/features.h"
#include "rncrf/gradcheck.h"
#include "rncrf/model.h"
#include "rncrf/synthetic.h"
#include "rncrf/training.h"

namespace rncrf {
namespace {

constexpr int kUsageExit = 1;
constexpr int kDataExit = 2;
constexpr int kNumericExit = 3;

// Training options are collected as raw strings and applied on top of the
// optional config file, so both go through the same validation.
struct ConfigOptions {
  std::string config_path;
  std::map<std::string, std::string> raw;
  bool freeze = false;
  CLI::App* app = nullptr;

  void Register(CLI::App* sub) {
    app = sub;
    sub->add_option("--config", config_path, "key=value config file");
    Add(sub, "--mode", "mode", "rncrf, rncrf-o, dtrnn-softmax or crf-emb");
    Add(sub, "--dim", "dim", "hidden and embedding dimension");
    Add(sub, "--window", "window", "context half-width T");
    Add(sub, "--batch-size", "batch_size", "pretraining mini-batch size");
    Add(sub, "--joint-batch-size", "joint_batch_size",
        "joint-phase batch size");
    Add(sub, "--pretrain-lr", "pretrain_lr", "AdaGrad rate for pretraining");
    Add(sub, "--pretrain-epochs", "pretrain_epochs", "pretraining epochs");
    Add(sub, "--lr", "lr", "initial joint learning rate");
    Add(sub, "--decay", "decay", "lr_e = lr / (1 + e / decay)");
    Add(sub, "--epochs", "epochs", "joint training epochs");
    Add(sub, "--seed", "seed", "random seed");
    Add(sub, "--min-count", "min_count", "vocabulary frequency cutoff");
    Add(sub, "--features", "features", "comma list of pos,namelist,lexicon");
    Add(sub, "--namelist-min-freq", "namelist_min_freq",
        "minimum aspect-term frequency for the term list");
    Add(sub, "--namelist-min-prob", "namelist_min_prob",
        "minimum aspect probability for the word list");
    Add(sub, "--clip", "clip", "max gradient norm (0 = off)");
    sub->add_flag("--freeze-embeddings", freeze,
                  "keep word embeddings fixed");
  }

  void Add(CLI::App* sub, const std::string& flag, const std::string& key,
           const std::string& help) {
    sub->add_option(flag, raw[key], help);
  }

  TrainConfig Build() const {
    TrainConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot open config " + config_path);
      ApplyConfig(in, config);
    }
    for (const auto& [key, value] : raw) {
      std::string flag = "--" + key;
      for (char& c : flag) {
        if (c == '_') c = '-';
      }
      if (app->count(flag) > 0) ApplyConfigValue(key, value, config);
    }
    if (freeze) config.freeze_embeddings = true;
    config.Validate();
    return config;
  }
};

TrainingResources LoadResources(const std::string& embeddings_path,
                                const std::string& lexicon_path,
                                const std::string& namelists_path,
                                std::ifstream& embeddings_stream) {
  TrainingResources resources;
  if (!embeddings_path.empty()) {
    embeddings_stream.open(embeddings_path);
    if (!embeddings_stream) {
      throw DataError("cannot open embeddings " + embeddings_path);
    }
    resources.embeddings = &embeddings_stream;
  }
  if (!lexicon_path.empty()) {
    std::ifstream in(lexicon_path);
    if (!in) throw DataError("cannot open lexicon " + lexicon_path);
    resources.lexicon = ReadLexicon(in);
  }
  if (!namelists_path.empty()) {
    std::ifstream in(namelists_path);
    if (!in) throw DataError("cannot open name lists " + namelists_path);
    resources.name_lists = ReadNameLists(in);
  }
  return resources;
}

void PrintEpoch(const EpochStats& stats) {
  std::printf("%s epoch %d lr %.6f loss %.6f loss/token %.6f\n",
              stats.phase.c_str(), stats.epoch + 1, stats.lr, stats.loss,
              stats.loss_per_token);
  std::fflush(stdout);
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError("cannot open " + path + " for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

Corpus ReadInput(const std::string& path) {
  if (path.empty() || path == "-") return ParseConll(std::cin, "<stdin>");
  return ReadConllFile(path);
}

int Run(int argc, char** argv) {
  CLI::App app{"Joint aspect/opinion term extraction with tree networks and CRFs"};
  app.require_subcommand(1);

  std::string train_path, dev_path, model_path, out_path, input_path;
  std::string embeddings_path, lexicon_path, namelists_path;
  std::string gold_path, pred_path, features_flag;
  bool key_values = false;
  double epsilon = 1e-5, tolerance = 1e-4;
  int length = 5;

  // stats
  CLI::App* stats = app.add_subcommand("stats", "corpus statistics");
  stats->add_option("--train", train_path, "corpus file")->required();

  // extract-features
  CLI::App* extract =
      app.add_subcommand("extract-features", "build aspect name lists");
  extract->add_option("--train", train_path, "training corpus")->required();
  extract->add_option("--out", out_path, "name-list file (default stdout)");
  ConfigOptions extract_options;
  extract_options.Register(extract);

  // pretrain
  CLI::App* pretrain =
      app.add_subcommand("pretrain", "initialize and pretrain a model");
  ConfigOptions pretrain_options;
  pretrain_options.Register(pretrain);
  pretrain->add_option("--train", train_path, "training corpus")->required();
  pretrain->add_option("--out", out_path, "checkpoint to write")->required();
  pretrain->add_option("--embeddings", embeddings_path, "word vectors");
  pretrain->add_option("--lexicon", lexicon_path, "opinion lexicon");
  pretrain->add_option("--namelists", namelists_path, "name-list file");

  // train
  CLI::App* train = app.add_subcommand(
      "train", "pretrain (unless --model is given) and train jointly");
  ConfigOptions train_options;
  train_options.Register(train);
  train->add_option("--train", train_path, "training corpus")->required();
  train->add_option("--dev", dev_path, "development corpus for F1 per epoch");
  train->add_option("--model", model_path,
                    "start from this checkpoint, skipping pretraining");
  train->add_option("--out", out_path, "checkpoint to write")->required();
  train->add_option("--embeddings", embeddings_path, "word vectors");
  train->add_option("--lexicon", lexicon_path, "opinion lexicon");
  train->add_option("--namelists", namelists_path, "name-list file");

  // tag
  CLI::App* tag = app.add_subcommand("tag", "label a corpus with a model");
  tag->add_option("--model", model_path, "checkpoint")->required();
  tag->add_option("--input", input_path, "corpus to tag (default stdin)");
  tag->add_option("--out", out_path, "output corpus (default stdout)");
  tag->add_option("--features", features_flag,
                  "expected feature set; must match the model");

  // eval
  CLI::App* eval = app.add_subcommand("eval", "chunk-level P/R/F1");
  eval->add_option("--gold", gold_path, "gold corpus")->required();
  eval->add_option("--pred", pred_path, "predicted corpus");
  eval->add_option("--model", model_path, "tag --gold with this model");
  eval->add_flag("--kv", key_values, "also print key=value lines");

  // info
  CLI::App* info = app.add_subcommand("info", "describe a checkpoint");
  info->add_option("--model", model_path, "checkpoint")->required();

  // gradcheck
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "compare analytic and finite-difference gradients");
  ConfigOptions check_options;
  check_options.Register(gradcheck);
  gradcheck->add_option("--train", train_path,
                        "take the first sentence of this corpus");
  gradcheck->add_option("--lexicon", lexicon_path, "opinion lexicon");
  gradcheck->add_option("--length", length, "random sentence length");
  gradcheck->add_option("--epsilon", epsilon, "finite-difference step");
  gradcheck->add_option("--tolerance", tolerance, "max relative error");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  if (stats->parsed()) {
    const Corpus corpus = ReadConllFile(train_path);
    const CorpusStats s = ComputeCorpusStats(corpus);
    std::printf("sentences=%d\ntokens=%d\naspect_spans=%d\nopinion_spans=%d\n"
                "label_mode=%s\n",
                s.sentences, s.tokens, s.aspect_spans, s.opinion_spans,
                s.mode == LabelMode::kFull ? "full" : "aspect-only");
    return 0;
  }

  if (extract->parsed()) {
    const TrainConfig config = extract_options.Build();
    const Corpus corpus = ReadConllFile(train_path);
    const NameLists lists =
        ExtractNameLists(corpus, config.features.min_term_freq,
                         config.features.min_word_prob);
    OutputFile out(out_path);
    WriteNameLists(out.stream(), lists);
    return 0;
  }

  if (pretrain->parsed()) {
    const TrainConfig config = pretrain_options.Build();
    const Corpus corpus = ReadConllFile(train_path);
    std::ifstream embeddings;
    Model model = InitModel(corpus, config,
                            LoadResources(embeddings_path, lexicon_path,
                                          namelists_path, embeddings));
    Pretrain(corpus, config, model,
             [](const EpochStats& s, const Model&) { PrintEpoch(s); });
    SaveCheckpointFile(model, out_path);
    return 0;
  }

  if (train->parsed()) {
    const TrainConfig config = train_options.Build();
    const Corpus corpus = ReadConllFile(train_path);
    std::optional<Corpus> dev;
    if (!dev_path.empty()) dev = ReadConllFile(dev_path);
    auto on_epoch = [&dev](const EpochStats& s, const Model& m) {
      PrintEpoch(s);
      if (dev && s.phase == "joint") {
        const EvalReport r = Evaluate(m, *dev);
        std::printf("dev epoch %d aspect_f1 %.4f opinion_f1 %.4f\n",
                    s.epoch + 1, r.aspect.f1(), r.opinion.f1());
        std::fflush(stdout);
      }
    };
    Model model;
    if (!model_path.empty()) {
      model = LoadCheckpointFile(model_path);
      if (model.mode != config.mode) {
        throw UsageError("checkpoint was built for mode " +
                         std::string(ModeName(model.mode)));
      }
    } else {
      std::ifstream embeddings;
      model = InitModel(corpus, config,
                        LoadResources(embeddings_path, lexicon_path,
                                      namelists_path, embeddings));
      Pretrain(corpus, config, model, on_epoch);
    }
    TrainJoint(corpus, config, model, on_epoch);
    SaveCheckpointFile(model, out_path);
    return 0;
  }

  if (tag->parsed()) {
    const Model model = LoadCheckpointFile(model_path);
    const Corpus corpus = ReadInput(input_path);
    std::optional<FeatureConfig> expected;
    if (tag->count("--features") > 0) expected = ParseFeatureList(features_flag);
    OutputFile out(out_path);
    for (const Sentence& s : corpus.sentences) {
      if (expected) Tag(model, s, *expected);
      WriteSentence(out.stream(), s, PredictLabels(model, s));
    }
    return 0;
  }

  if (eval->parsed()) {
    const Corpus gold = ReadConllFile(gold_path);
    std::vector<std::vector<Span>> gold_spans, pred_spans;
    if (!model_path.empty()) {
      const Model model = LoadCheckpointFile(model_path);
      for (const Sentence& s : gold.sentences) {
        std::vector<BioLabel> labels = s.labels();
        for (BioLabel& l : labels) l = ProjectLabel(l, model.label_mode);
        gold_spans.push_back(DecodeLabels(labels));
        pred_spans.push_back(Tag(model, s));
      }
    } else {
      if (pred_path.empty()) throw UsageError("eval needs --pred or --model");
      const Corpus pred = ReadConllFile(pred_path);
      for (const Sentence& s : gold.sentences) {
        gold_spans.push_back(DecodeLabels(s.labels()));
      }
      for (const Sentence& s : pred.sentences) {
        pred_spans.push_back(DecodeLabels(s.labels()));
      }
    }
    const EvalReport report = ChunkF1(gold_spans, pred_spans);
    PrintReport(std::cout, report);
    if (key_values) PrintReportKeyValues(std::cout, report);
    return 0;
  }

  if (info->parsed()) {
    const Model m = LoadCheckpointFile(model_path);
    std::printf("mode=%s\ndim=%d\nwindow=%d\nlabels=%d\nlabel_set=",
                std::string(ModeName(m.mode)).c_str(), m.dim(), m.window(),
                m.labels());
    const std::vector<std::string> names = LabelNames(m.label_mode);
    for (size_t i = 0; i < names.size(); ++i) {
      std::printf("%s%s", i ? "," : "", names[i].c_str());
    }
    std::printf("\nfeatures=%s\nvocab=%d\nrelations=%d\n",
                FeatureListString(m.features).c_str(), m.vocab.size(),
                m.relations.size());
    return 0;
  }

  if (gradcheck->parsed()) {
    TrainConfig config = check_options.Build();
    if (gradcheck->count("--dim") == 0) config.dim = 6;
    if (gradcheck->count("--window") == 0) config.window = 1;
    Rng rng(config.seed);
    Corpus corpus;
    if (!train_path.empty()) {
      corpus = ReadConllFile(train_path);
      if (corpus.sentences.empty()) throw DataError("empty corpus");
    } else {
      if (length < 1) throw UsageError("--length must be at least 1");
      corpus.sentences.push_back(RandomSentence(length, 3, rng));
      corpus.sentences.push_back(RandomSentence(length, 3, rng));
    }
    TrainingResources resources;
    if (!lexicon_path.empty()) {
      std::ifstream in(lexicon_path);
      if (!in) throw DataError("cannot open lexicon " + lexicon_path);
      resources.lexicon = ReadLexicon(in);
    } else if (config.features.lexicon) {
      // Mark the first two words as opinion words.
      for (int i = 0; i < std::min(2, corpus.sentences[0].size()); ++i) {
        resources.lexicon.words.insert(
            Lowercase(corpus.sentences[0].tokens[i].surface));
      }
    }
    if (config.features.namelist) {
      resources.name_lists =
          ExtractNameLists(corpus, 1, config.features.min_word_prob);
    }
    Model model = InitModel(corpus, config, std::move(resources));
    RandomizeParameters(model, 0.5, config.seed + 7);
    const GradCheckReport report =
        GradCheck(model, corpus.sentences[0], epsilon);
    PrintGradCheckReport(std::cout, report, tolerance);
    const bool ok = report.Passed(tolerance);
    std::printf("max_relative_error=%.3e %s\n", report.max_relative_error(),
                ok ? "PASS" : "FAIL");
    return ok ? 0 : kNumericExit;
  }
  return kUsageExit;
}

}  // namespace
}  // namespace rncrf

int main(int argc, char** argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  try {
    return rncrf::Run(argc, argv);
  } catch (const rncrf::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return rncrf::kUsageExit;
  } catch (const rncrf::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return rncrf::kDataExit;
  } catch (const rncrf::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return rncrf::kNumericExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return rncrf::kDataExit;
  }
}

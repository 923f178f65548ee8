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

// A complete tagger: tree network, CRF layer, vocabularies and feature
// resources, together with the per-sentence training objective of each
// model variant.

#ifndef RNCRF_MODEL_H_
#define RNCRF_MODEL_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rncrf/corpus.h"
#include "rncrf/crf.h"
#include "rncrf/dtrnn.h"
#include "rncrf/features.h"

namespace rncrf {

// kRncrf:        tree network + CRF, five labels.
// kRncrfO:       tree network + CRF, aspect labels only.
// kDtrnnSoftmax: tree network + per-token softmax (the CRF layer degenerates
//                to T = 0 and V = 0, W_0 is the softmax weight matrix).
// kCrfEmb:       CRF directly over word embeddings; W_v and W_r unused.
enum class Mode : uint8_t { kRncrf, kRncrfO, kDtrnnSoftmax, kCrfEmb };

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);
LabelMode LabelModeFor(Mode mode);

struct Model {
  Mode mode = Mode::kRncrf;
  LabelMode label_mode = LabelMode::kFull;
  Vocabulary vocab;
  RelationTable relations;
  DtrnnParams dtrnn;
  UnaryWeights unary;
  TransitionMatrix transitions;
  FeatureConfig features;
  NameLists name_lists;
  SentimentLexicon lexicon;

  int dim() const { return dtrnn.dim(); }
  int window() const { return unary.window(); }
  int labels() const { return unary.labels(); }
  int feature_dim() const { return features.dim(); }
  int input_dim() const { return unary.input_dim(); }

  // Throws DataError if shapes disagree with each other or the label mode.
  void Validate() const;
};

struct ModelSpec {
  Mode mode = Mode::kRncrf;
  int dim = 300;
  int window = 2;
  uint64_t seed = 1;
  FeatureConfig features;
};

// W_v and W_r uniform in +-sqrt(6)/sqrt(2d+1); b, W_0, W_+-t and V zero.
Model CreateModel(const ModelSpec& spec, Vocabulary vocab,
                  RelationTable relations, EmbeddingMatrix embeddings,
                  NameLists name_lists, SentimentLexicon lexicon);

// A sentence mapped onto a model's vocabulary, relations and features.
struct PreparedSentence {
  std::vector<int> words;
  DepTree tree;
  Eigen::MatrixXd features;  // feature_dim x n
  std::vector<int> gold;     // label indices in the model's label mode
};

PreparedSentence Prepare(const Model& model, const Sentence& sentence);

struct ModelGradients {
  DtrnnGradients dtrnn;
  UnaryWeights unary;
  Eigen::MatrixXd transitions;

  static ModelGradients ZerosLike(const Model& model);
  ModelGradients& operator+=(const ModelGradients& other);
  void Scale(double factor);
  double SquaredNorm() const;
};

// Loss of one sentence under the model's training objective (CRF negative
// log-likelihood, or mean token cross-entropy for kDtrnnSoftmax). When
// `grads` is non-null the gradient of that loss is added to it.
double SentenceLoss(const Model& model, const PreparedSentence& sentence,
                    ModelGradients* grads);

// Label indices of the best labeling under the model.
std::vector<int> PredictIndices(const Model& model,
                                const PreparedSentence& sentence);

// Input matrix of the CRF layer (hidden or embedding rows, then features).
Eigen::MatrixXd LayerInputs(const Model& model,
                            const PreparedSentence& sentence);

using DenseBlockFn = std::function<void(const std::string& name,
                                        Eigen::Ref<Eigen::MatrixXd> param,
                                        Eigen::Ref<const Eigen::MatrixXd> grad)>;

// Visits every dense block the model's mode trains, paired with its
// gradient, in checkpoint order. Embedding columns are sparse and handled
// by callers.
void ForEachDenseBlock(Model& model, const ModelGradients& grads,
                       const DenseBlockFn& fn);

}  // namespace rncrf

#endif  // RNCRF_MODEL_H_

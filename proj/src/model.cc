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

#include "rncrf/model.h"

#include "rncrf/errors.h"

namespace rncrf {

namespace {

bool UsesTree(Mode mode) { return mode != Mode::kCrfEmb; }

// Embedding columns of the sentence's words, d x n.
Eigen::MatrixXd EmbeddingInputs(const Model& model,
                                const PreparedSentence& s) {
  Eigen::MatrixXd x(model.dim(), s.words.size());
  for (size_t k = 0; k < s.words.size(); ++k) {
    x.col(k) = model.dtrnn.w_e.col(s.words[k]);
  }
  return x;
}

std::string Shape(const Eigen::MatrixXd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void ExpectShape(const Eigen::MatrixXd& m, Eigen::Index rows,
                 Eigen::Index cols, const std::string& name) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DataError(name + " has shape " + Shape(m) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kRncrf: return "rncrf";
    case Mode::kRncrfO: return "rncrf-o";
    case Mode::kDtrnnSoftmax: return "dtrnn-softmax";
    case Mode::kCrfEmb: return "crf-emb";
  }
  return "rncrf";
}

std::optional<Mode> ParseMode(std::string_view name) {
  for (Mode m : {Mode::kRncrf, Mode::kRncrfO, Mode::kDtrnnSoftmax,
                 Mode::kCrfEmb}) {
    if (ModeName(m) == name) return m;
  }
  return std::nullopt;
}

LabelMode LabelModeFor(Mode mode) {
  return mode == Mode::kRncrfO ? LabelMode::kAspectOnly : LabelMode::kFull;
}

void Model::Validate() const {
  const int d = dim();
  const int labels = LabelCount(label_mode);
  ExpectShape(dtrnn.w_v, d, d, "W_v");
  if (static_cast<int>(dtrnn.w_r.size()) != relations.size()) {
    throw DataError("relation matrix count " +
                    std::to_string(dtrnn.w_r.size()) + " != relation table " +
                    std::to_string(relations.size()));
  }
  for (const Eigen::MatrixXd& w : dtrnn.w_r) ExpectShape(w, d, d, "W_r");
  ExpectShape(dtrnn.w_e, d, vocab.size(), "W_e");
  const int input = d + features.dim();
  ExpectShape(unary.w0, labels, input, "W_0");
  if (unary.left.size() != unary.right.size()) {
    throw DataError("left and right window sizes differ");
  }
  for (const Eigen::MatrixXd& w : unary.left) ExpectShape(w, labels, input, "W_-t");
  for (const Eigen::MatrixXd& w : unary.right) ExpectShape(w, labels, input, "W_+t");
  ExpectShape(transitions, labels, labels, "V");
  if (LabelModeFor(mode) != label_mode) {
    throw DataError("label set does not match mode " +
                    std::string(ModeName(mode)));
  }
  if (mode == Mode::kDtrnnSoftmax && window() != 0) {
    throw DataError("dtrnn-softmax models have no context window");
  }
}

Model CreateModel(const ModelSpec& spec, Vocabulary vocab,
                  RelationTable relations, EmbeddingMatrix embeddings,
                  NameLists name_lists, SentimentLexicon lexicon) {
  Model model;
  model.mode = spec.mode;
  model.label_mode = LabelModeFor(spec.mode);
  model.vocab = std::move(vocab);
  model.relations = std::move(relations);
  model.dtrnn = InitDtrnnParams(spec.dim, model.relations, spec.seed);
  model.dtrnn.w_e = std::move(embeddings);
  model.features = spec.features;
  model.name_lists = std::move(name_lists);
  model.lexicon = std::move(lexicon);
  const int window = spec.mode == Mode::kDtrnnSoftmax ? 0 : spec.window;
  const int labels = LabelCount(model.label_mode);
  model.unary = UnaryWeights::Zeros(labels, spec.dim + spec.features.dim(),
                                    window);
  model.transitions = Eigen::MatrixXd::Zero(labels, labels);
  model.Validate();
  return model;
}

PreparedSentence Prepare(const Model& model, const Sentence& sentence) {
  PreparedSentence p;
  p.words.reserve(sentence.size());
  p.gold.reserve(sentence.size());
  for (const Token& t : sentence.tokens) {
    p.words.push_back(model.vocab.Lookup(t.surface));
    p.gold.push_back(LabelIndex(t.label, model.label_mode));
  }
  p.tree = BuildTree(sentence, model.relations);
  p.features = Featurize(sentence, model.name_lists, model.lexicon,
                         model.features);
  return p;
}

ModelGradients ModelGradients::ZerosLike(const Model& model) {
  ModelGradients g;
  g.dtrnn = DtrnnGradients::ZerosLike(model.dtrnn);
  g.unary = UnaryWeights::Zeros(model.labels(), model.input_dim(),
                                model.window());
  g.transitions = Eigen::MatrixXd::Zero(model.labels(), model.labels());
  return g;
}

ModelGradients& ModelGradients::operator+=(const ModelGradients& other) {
  dtrnn += other.dtrnn;
  unary.w0 += other.unary.w0;
  for (size_t t = 0; t < unary.left.size(); ++t) {
    unary.left[t] += other.unary.left[t];
    unary.right[t] += other.unary.right[t];
  }
  transitions += other.transitions;
  return *this;
}

void ModelGradients::Scale(double factor) {
  dtrnn.w_v *= factor;
  for (auto& w : dtrnn.w_r) w *= factor;
  dtrnn.b *= factor;
  for (auto& [word, g] : dtrnn.w_e) g *= factor;
  unary.w0 *= factor;
  for (auto& w : unary.left) w *= factor;
  for (auto& w : unary.right) w *= factor;
  transitions *= factor;
}

double ModelGradients::SquaredNorm() const {
  double total = dtrnn.w_v.squaredNorm() + dtrnn.b.squaredNorm() +
                 unary.w0.squaredNorm() + transitions.squaredNorm();
  for (const auto& w : dtrnn.w_r) total += w.squaredNorm();
  for (const auto& [word, g] : dtrnn.w_e) total += g.squaredNorm();
  for (const auto& w : unary.left) total += w.squaredNorm();
  for (const auto& w : unary.right) total += w.squaredNorm();
  return total;
}

Eigen::MatrixXd LayerInputs(const Model& model,
                            const PreparedSentence& sentence) {
  if (!UsesTree(model.mode)) {
    return Augment(EmbeddingInputs(model, sentence), sentence.features);
  }
  return Augment(Forward(sentence.tree, model.dtrnn, sentence.words).h,
                 sentence.features);
}

double SentenceLoss(const Model& model, const PreparedSentence& sentence,
                    ModelGradients* grads) {
  const int d = model.dim();
  if (sentence.features.rows() != model.feature_dim()) {
    throw DataError("sentence has " +
                    std::to_string(sentence.features.rows()) +
                    " feature rows, model expects " +
                    std::to_string(model.feature_dim()));
  }

  if (model.mode == Mode::kCrfEmb) {
    const Eigen::MatrixXd inputs = LayerInputs(model, sentence);
    CrfLoss crf = NllAndGradients(inputs, sentence.gold, model.unary,
                                  model.transitions);
    if (grads != nullptr) {
      grads->unary.w0 += crf.grads.unary.w0;
      for (int t = 0; t < model.window(); ++t) {
        grads->unary.left[t] += crf.grads.unary.left[t];
        grads->unary.right[t] += crf.grads.unary.right[t];
      }
      grads->transitions += crf.grads.v;
      const Eigen::MatrixXd dx = HiddenRows(crf.grads.inputs, d);
      for (size_t k = 0; k < sentence.words.size(); ++k) {
        auto [it, inserted] =
            grads->dtrnn.w_e.try_emplace(sentence.words[k], dx.col(k));
        if (!inserted) it->second += dx.col(k);
      }
    }
    return crf.nll;
  }

  const HiddenStates states =
      Forward(sentence.tree, model.dtrnn, sentence.words);
  const Eigen::MatrixXd inputs = Augment(states.h, sentence.features);
  double loss = 0.0;
  Eigen::MatrixXd d_inputs;
  if (model.mode == Mode::kDtrnnSoftmax) {
    SoftmaxResult softmax = SoftmaxHead(inputs, model.unary.w0, sentence.gold);
    loss = softmax.loss;
    if (grads == nullptr) return loss;
    grads->unary.w0 += softmax.d_head;
    d_inputs = std::move(softmax.d_inputs);
  } else {
    CrfLoss crf = NllAndGradients(inputs, sentence.gold, model.unary,
                                  model.transitions);
    loss = crf.nll;
    if (grads == nullptr) return loss;
    grads->unary.w0 += crf.grads.unary.w0;
    for (int t = 0; t < model.window(); ++t) {
      grads->unary.left[t] += crf.grads.unary.left[t];
      grads->unary.right[t] += crf.grads.unary.right[t];
    }
    grads->transitions += crf.grads.v;
    d_inputs = std::move(crf.grads.inputs);
  }
  grads->dtrnn += Backward(sentence.tree, model.dtrnn, states, sentence.words,
                           HiddenRows(d_inputs, d));
  return loss;
}

std::vector<int> PredictIndices(const Model& model,
                                const PreparedSentence& sentence) {
  if (sentence.features.rows() != model.feature_dim()) {
    throw DataError("sentence has " +
                    std::to_string(sentence.features.rows()) +
                    " feature rows, model expects " +
                    std::to_string(model.feature_dim()));
  }
  const Eigen::MatrixXd inputs = LayerInputs(model, sentence);
  return Viterbi(UnaryScores(inputs, model.unary), model.transitions);
}

void ForEachDenseBlock(Model& model, const ModelGradients& grads,
                       const DenseBlockFn& fn) {
  if (UsesTree(model.mode)) {
    fn("W_v", model.dtrnn.w_v, grads.dtrnn.w_v);
    for (size_t r = 0; r < model.dtrnn.w_r.size(); ++r) {
      fn("W_r[" + model.relations.name(static_cast<int>(r)) + "]",
         model.dtrnn.w_r[r], grads.dtrnn.w_r[r]);
    }
    fn("b", model.dtrnn.b, grads.dtrnn.b);
  }
  fn("W_0", model.unary.w0, grads.unary.w0);
  for (int t = model.window(); t >= 1; --t) {
    fn("W_-" + std::to_string(t), model.unary.left[t - 1],
       grads.unary.left[t - 1]);
  }
  for (int t = 1; t <= model.window(); ++t) {
    fn("W_+" + std::to_string(t), model.unary.right[t - 1],
       grads.unary.right[t - 1]);
  }
  if (model.mode != Mode::kDtrnnSoftmax) {
    fn("V", model.transitions, grads.transitions);
  }
}

}  // namespace rncrf

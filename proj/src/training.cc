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

#include "rncrf/training.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>

#include <glog/logging.h>

#include "rncrf/errors.h"
#include "rncrf/random.h"

namespace rncrf {

namespace {

// Keeps pretraining and joint shuffles on separate streams.
constexpr uint64_t kPretrainStream = 1ull << 32;

std::vector<PreparedSentence> PrepareAll(const Model& model,
                                         const Corpus& corpus) {
  std::vector<PreparedSentence> out;
  out.reserve(corpus.sentences.size());
  for (const Sentence& s : corpus.sentences) out.push_back(Prepare(model, s));
  return out;
}

std::vector<size_t> ShuffledOrder(size_t n, uint64_t seed, uint64_t stream) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = DerivedRng(seed, stream);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

[[noreturn]] void NonFinite(const std::string& phase, int epoch, size_t batch,
                            const Corpus& corpus,
                            std::span<const size_t> members) {
  std::string ids;
  for (size_t i : members) {
    if (!ids.empty()) ids += ' ';
    ids += corpus.sentences[i].id;
  }
  throw NumericError(phase + " epoch " + std::to_string(epoch) + " batch " +
                     std::to_string(batch) +
                     ": non-finite loss; sentences: " + ids);
}

int ParseIntValue(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw UsageError("bad integer for " + key + ": '" + value + "'");
  }
}

double ParseDoubleValue(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number for " + key + ": '" + value + "'");
  }
}

bool ParseBoolValue(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw UsageError("bad boolean for " + key + ": '" + value + "'");
}

std::string Trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void TrainConfig::Validate() const {
  if (dim <= 0) throw UsageError("dim must be positive");
  if (window < 0) throw UsageError("window must be non-negative");
  if (batch_size < 1 || joint_batch_size < 1) {
    throw UsageError("batch sizes must be at least 1");
  }
  if (!(pretrain_lr >= 0) || !(lr >= 0) || !std::isfinite(pretrain_lr) ||
      !std::isfinite(lr)) {
    throw UsageError("learning rates must be finite and non-negative");
  }
  if (!(decay > 0)) throw UsageError("decay must be positive");
  if (pretrain_epochs < 0 || epochs < 0) {
    throw UsageError("epoch counts must be non-negative");
  }
  if (min_count < 1) throw UsageError("min_count must be at least 1");
  if (clip < 0) throw UsageError("clip must be non-negative");
}

ModelSpec TrainConfig::spec() const {
  ModelSpec spec;
  spec.mode = mode;
  spec.dim = dim;
  spec.window = window;
  spec.seed = seed;
  spec.features = features;
  return spec;
}

void ApplyConfigValue(const std::string& key, const std::string& value,
                      TrainConfig& c) {
  if (key == "mode") {
    std::optional<Mode> mode = ParseMode(value);
    if (!mode) throw UsageError("unknown mode '" + value + "'");
    c.mode = *mode;
  } else if (key == "dim") {
    c.dim = ParseIntValue(key, value);
  } else if (key == "window") {
    c.window = ParseIntValue(key, value);
  } else if (key == "batch_size") {
    c.batch_size = ParseIntValue(key, value);
  } else if (key == "pretrain_lr") {
    c.pretrain_lr = ParseDoubleValue(key, value);
  } else if (key == "pretrain_epochs") {
    c.pretrain_epochs = ParseIntValue(key, value);
  } else if (key == "lr") {
    c.lr = ParseDoubleValue(key, value);
  } else if (key == "decay") {
    c.decay = ParseDoubleValue(key, value);
  } else if (key == "epochs") {
    c.epochs = ParseIntValue(key, value);
  } else if (key == "joint_batch_size") {
    c.joint_batch_size = ParseIntValue(key, value);
  } else if (key == "seed") {
    c.seed = static_cast<uint64_t>(ParseIntValue(key, value));
  } else if (key == "min_count") {
    c.min_count = ParseIntValue(key, value);
  } else if (key == "features") {
    const FeatureConfig parsed = ParseFeatureList(value);
    c.features.pos = parsed.pos;
    c.features.namelist = parsed.namelist;
    c.features.lexicon = parsed.lexicon;
  } else if (key == "namelist_min_freq") {
    c.features.min_term_freq = ParseIntValue(key, value);
  } else if (key == "namelist_min_prob") {
    c.features.min_word_prob = ParseDoubleValue(key, value);
  } else if (key == "freeze_embeddings") {
    c.freeze_embeddings = ParseBoolValue(key, value);
  } else if (key == "clip") {
    c.clip = ParseDoubleValue(key, value);
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

void ApplyConfig(std::istream& in, TrainConfig& config) {
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_number) +
                       ": expected key=value");
    }
    ApplyConfigValue(Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)),
                     config);
  }
}

double DecayedRate(double lr0, double decay, int epoch) {
  return lr0 / (1.0 + epoch / decay);
}

Model InitModel(const Corpus& corpus, const TrainConfig& config,
                TrainingResources resources) {
  config.Validate();
  if (corpus.sentences.empty()) throw DataError("training corpus is empty");
  Vocabulary vocab = BuildVocab(corpus, config.min_count);
  RelationTable relations = BuildRelationTable(corpus);
  EmbeddingMatrix embeddings =
      resources.embeddings != nullptr
          ? LoadEmbeddings(*resources.embeddings, vocab, config.dim,
                           config.seed + 1)
          : RandomEmbeddings(vocab, config.dim, config.seed + 1);
  NameLists lists;
  if (config.features.namelist) {
    lists = resources.name_lists
                ? *resources.name_lists
                : ExtractNameLists(corpus, config.features.min_term_freq,
                                   config.features.min_word_prob);
  }
  SentimentLexicon lexicon;
  if (config.features.lexicon) {
    if (resources.lexicon.words.empty()) {
      throw UsageError("the lexicon feature needs a non-empty lexicon");
    }
    lexicon = std::move(resources.lexicon);
  }
  return CreateModel(config.spec(), std::move(vocab), std::move(relations),
                     std::move(embeddings), std::move(lists),
                     std::move(lexicon));
}

void AdaGrad::Step(const std::string& key, Eigen::Ref<Eigen::MatrixXd> param,
                   const Eigen::Ref<const Eigen::MatrixXd>& grad) {
  auto [it, inserted] = dense_.try_emplace(
      key, Eigen::MatrixXd::Zero(param.rows(), param.cols()));
  Eigen::MatrixXd& acc = it->second;
  acc.array() += grad.array().square();
  param.array() -= lr_ * grad.array() / (acc.array().sqrt() + kEpsilon);
}

void AdaGrad::StepColumn(int word, Eigen::Ref<Eigen::VectorXd> param,
                         const Eigen::VectorXd& grad) {
  auto [it, inserted] =
      columns_.try_emplace(word, Eigen::VectorXd::Zero(param.size()));
  Eigen::VectorXd& acc = it->second;
  acc.array() += grad.array().square();
  param.array() -= lr_ * grad.array() / (acc.array().sqrt() + kEpsilon);
}

const Eigen::MatrixXd* AdaGrad::accumulator(const std::string& key) const {
  auto it = dense_.find(key);
  return it == dense_.end() ? nullptr : &it->second;
}

double ClipGradients(ModelGradients& grads, double max_norm) {
  const double norm = std::sqrt(grads.SquaredNorm());
  if (max_norm > 0 && norm > max_norm) grads.Scale(max_norm / norm);
  return norm;
}

void SgdStep(Model& model, const ModelGradients& grads, double lr,
             bool freeze_embeddings) {
  ForEachDenseBlock(model, grads,
                    [lr](const std::string&, Eigen::Ref<Eigen::MatrixXd> p,
                         Eigen::Ref<const Eigen::MatrixXd> g) {
                      p -= lr * g;
                    });
  if (!freeze_embeddings) {
    for (const auto& [word, g] : grads.dtrnn.w_e) {
      model.dtrnn.w_e.col(word) -= lr * g;
    }
  }
}

void Pretrain(const Corpus& corpus, const TrainConfig& config, Model& model,
              const EpochCallback& on_epoch) {
  config.Validate();
  if (model.mode == Mode::kCrfEmb || config.pretrain_epochs == 0) return;
  const int d = model.dim();
  const std::vector<PreparedSentence> data = PrepareAll(model, corpus);
  Eigen::MatrixXd head = Eigen::MatrixXd::Zero(model.labels(), d);
  AdaGrad optimizer(config.pretrain_lr);

  for (int epoch = 0; epoch < config.pretrain_epochs; ++epoch) {
    const std::vector<size_t> order =
        ShuffledOrder(data.size(), config.seed, kPretrainStream + epoch);
    double total = 0.0;
    double total_tokens_loss = 0.0;
    size_t tokens = 0;
    for (size_t start = 0, batch = 0; start < order.size();
         start += config.batch_size, ++batch) {
      const size_t end =
          std::min(order.size(), start + static_cast<size_t>(config.batch_size));
      const std::span<const size_t> members(order.data() + start, end - start);
      DtrnnGradients grads = DtrnnGradients::ZerosLike(model.dtrnn);
      Eigen::MatrixXd head_grad = Eigen::MatrixXd::Zero(head.rows(), d);
      for (size_t i : members) {
        const PreparedSentence& s = data[i];
        const HiddenStates states = Forward(s.tree, model.dtrnn, s.words);
        SoftmaxResult softmax = SoftmaxHead(states.h, head, s.gold);
        if (!std::isfinite(softmax.loss)) {
          NonFinite("pretrain", epoch, batch, corpus, members);
        }
        total += softmax.loss;
        total_tokens_loss += softmax.loss * s.words.size();
        tokens += s.words.size();
        head_grad += softmax.d_head;
        grads += Backward(s.tree, model.dtrnn, states, s.words,
                          softmax.d_inputs);
      }
      const double scale = 1.0 / static_cast<double>(members.size());
      head_grad *= scale;
      grads.w_v *= scale;
      for (auto& w : grads.w_r) w *= scale;
      grads.b *= scale;
      for (auto& [word, g] : grads.w_e) g *= scale;
      if (config.clip > 0) {
        double sq = head_grad.squaredNorm() + grads.w_v.squaredNorm() +
                    grads.b.squaredNorm();
        for (const auto& w : grads.w_r) sq += w.squaredNorm();
        for (const auto& [word, g] : grads.w_e) sq += g.squaredNorm();
        const double norm = std::sqrt(sq);
        if (norm > config.clip) {
          const double f = config.clip / norm;
          head_grad *= f;
          grads.w_v *= f;
          for (auto& w : grads.w_r) w *= f;
          grads.b *= f;
          for (auto& [word, g] : grads.w_e) g *= f;
        }
      }
      optimizer.Step("W_v", model.dtrnn.w_v, grads.w_v);
      for (size_t r = 0; r < grads.w_r.size(); ++r) {
        optimizer.Step("W_r[" + model.relations.name(static_cast<int>(r)) + "]",
                       model.dtrnn.w_r[r], grads.w_r[r]);
      }
      optimizer.Step("b", model.dtrnn.b, grads.b);
      optimizer.Step("head", head, head_grad);
      if (!config.freeze_embeddings) {
        for (const auto& [word, g] : grads.w_e) {
          optimizer.StepColumn(word, model.dtrnn.w_e.col(word), g);
        }
      }
    }
    EpochStats stats;
    stats.phase = "pretrain";
    stats.epoch = epoch;
    stats.lr = config.pretrain_lr;
    stats.loss = data.empty() ? 0.0 : total / data.size();
    stats.loss_per_token = tokens == 0 ? 0.0 : total_tokens_loss / tokens;
    VLOG(1) << "pretrain epoch " << epoch << " loss " << stats.loss;
    if (on_epoch) on_epoch(stats, model);
  }
}

void TrainJoint(const Corpus& corpus, const TrainConfig& config, Model& model,
                const EpochCallback& on_epoch) {
  config.Validate();
  model.Validate();
  const std::vector<PreparedSentence> data = PrepareAll(model, corpus);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double lr = DecayedRate(config.lr, config.decay, epoch);
    const std::vector<size_t> order =
        ShuffledOrder(data.size(), config.seed, epoch);
    double total = 0.0;
    size_t tokens = 0;
    for (size_t start = 0, batch = 0; start < order.size();
         start += config.joint_batch_size, ++batch) {
      const size_t end = std::min(
          order.size(), start + static_cast<size_t>(config.joint_batch_size));
      const std::span<const size_t> members(order.data() + start, end - start);
      ModelGradients grads = ModelGradients::ZerosLike(model);
      for (size_t i : members) {
        const double loss = SentenceLoss(model, data[i], &grads);
        if (!std::isfinite(loss)) {
          NonFinite("joint", epoch, batch, corpus, members);
        }
        total += loss;
        tokens += data[i].words.size();
      }
      if (members.size() > 1) grads.Scale(1.0 / members.size());
      if (config.clip > 0) ClipGradients(grads, config.clip);
      SgdStep(model, grads, lr, config.freeze_embeddings);
    }
    EpochStats stats;
    stats.phase = "joint";
    stats.epoch = epoch;
    stats.lr = lr;
    stats.loss = data.empty() ? 0.0 : total / data.size();
    stats.loss_per_token = tokens == 0 ? 0.0 : total / tokens;
    VLOG(1) << "joint epoch " << epoch << " loss " << stats.loss;
    if (on_epoch) on_epoch(stats, model);
  }
}

Model TrainPipeline(const Corpus& corpus, const TrainConfig& config,
                    TrainingResources resources,
                    const EpochCallback& on_epoch) {
  Model model = InitModel(corpus, config, std::move(resources));
  Pretrain(corpus, config, model, on_epoch);
  TrainJoint(corpus, config, model, on_epoch);
  return model;
}

}  // namespace rncrf

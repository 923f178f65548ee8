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

// Training: model initialization, tree-network pretraining with a
// temporary softmax head (mini-batch AdaGrad), and joint training of the
// whole model by decayed SGD.

#ifndef RNCRF_TRAINING_H_
#define RNCRF_TRAINING_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rncrf/corpus.h"
#include "rncrf/features.h"
#include "rncrf/model.h"

namespace rncrf {

struct TrainConfig {
  Mode mode = Mode::kRncrf;
  int dim = 300;
  int window = 2;
  int batch_size = 25;  // pretraining mini-batch
  double pretrain_lr = 0.02;
  int pretrain_epochs = 4;
  double lr = 0.02;     // joint-phase initial rate
  double decay = 10.0;  // lr_e = lr / (1 + e / decay)
  int epochs = 10;
  int joint_batch_size = 1;
  uint64_t seed = 1;
  int min_count = 1;
  FeatureConfig features;
  bool freeze_embeddings = false;
  double clip = 0.0;  // max global gradient norm, 0 = off

  // Throws UsageError on out-of-range values.
  void Validate() const;
  ModelSpec spec() const;
};

// Applies `key = value` lines (keys named like the fields above, plus
// `features`, `namelist_min_freq`, `namelist_min_prob`). '#' starts a
// comment. Throws UsageError on unknown keys or bad values.
void ApplyConfig(std::istream& in, TrainConfig& config);
void ApplyConfigValue(const std::string& key, const std::string& value,
                      TrainConfig& config);

// Learning rate of the joint phase at 0-based epoch `epoch`.
double DecayedRate(double lr0, double decay, int epoch);

struct TrainingResources {
  std::istream* embeddings = nullptr;  // optional pretrained vectors
  SentimentLexicon lexicon;
  std::optional<NameLists> name_lists;  // extracted from the corpus if unset
};

// Builds vocabulary, relation table, embeddings and name lists from the
// training corpus, then initializes all parameters.
Model InitModel(const Corpus& corpus, const TrainConfig& config,
                TrainingResources resources);

// Sum of squared gradients per coordinate, 1e-8 damping.
class AdaGrad {
 public:
  static constexpr double kEpsilon = 1e-8;

  explicit AdaGrad(double lr) : lr_(lr) {}

  // Updates `param` in place, accumulating `grad` into the state `key`.
  void Step(const std::string& key, Eigen::Ref<Eigen::MatrixXd> param,
            const Eigen::Ref<const Eigen::MatrixXd>& grad);
  void StepColumn(int word, Eigen::Ref<Eigen::VectorXd> param,
                  const Eigen::VectorXd& grad);

  const Eigen::MatrixXd* accumulator(const std::string& key) const;

 private:
  double lr_;
  std::map<std::string, Eigen::MatrixXd> dense_;
  std::map<int, Eigen::VectorXd> columns_;
};

struct EpochStats {
  std::string phase;  // "pretrain" or "joint"
  int epoch = 0;
  double lr = 0.0;
  double loss = 0.0;           // mean per sentence
  double loss_per_token = 0.0;
};

using EpochCallback = std::function<void(const EpochStats&, const Model&)>;

// Mini-batch AdaGrad on the cross-entropy of a temporary per-token softmax
// head over the tree network's hidden vectors. Updates W_v, W_r, b and W_e
// (unless frozen); the head is discarded afterwards. No-op for kCrfEmb.
// Throws NumericError on a non-finite loss.
void Pretrain(const Corpus& corpus, const TrainConfig& config, Model& model,
              const EpochCallback& on_epoch = nullptr);

// SGD on the model's sentence objective with the decayed learning rate,
// batches of `joint_batch_size` sentences in a seeded shuffled order.
// kCrfEmb never touches W_v or W_r. Throws NumericError on a non-finite loss.
void TrainJoint(const Corpus& corpus, const TrainConfig& config, Model& model,
                const EpochCallback& on_epoch = nullptr);

// InitModel, Pretrain, TrainJoint.
Model TrainPipeline(const Corpus& corpus, const TrainConfig& config,
                    TrainingResources resources,
                    const EpochCallback& on_epoch = nullptr);

// Plain SGD step `param -= lr * grad` over every block the mode trains.
void SgdStep(Model& model, const ModelGradients& grads, double lr,
             bool freeze_embeddings);

// Rescales `grads` to norm `max_norm` if it is larger; returns the norm
// before clipping.
double ClipGradients(ModelGradients& grads, double max_norm);

}  // namespace rncrf

#endif  // RNCRF_TRAINING_H_

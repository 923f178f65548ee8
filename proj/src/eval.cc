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

#include "rncrf/eval.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>

#include "rncrf/errors.h"

namespace rncrf {

double ChunkCounts::precision() const {
  return predicted == 0 ? 0.0 : static_cast<double>(true_positive) / predicted;
}

double ChunkCounts::recall() const {
  return gold == 0 ? 0.0 : static_cast<double>(true_positive) / gold;
}

double ChunkCounts::f1() const {
  const double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

EvalReport ChunkF1(const std::vector<std::vector<Span>>& gold,
                   const std::vector<std::vector<Span>>& pred) {
  if (gold.size() != pred.size()) {
    throw DataError("gold has " + std::to_string(gold.size()) +
                    " sentences, prediction has " +
                    std::to_string(pred.size()));
  }
  EvalReport report;
  auto counts = [&report](Category c) -> ChunkCounts& {
    return c == Category::kAspect ? report.aspect : report.opinion;
  };
  for (size_t i = 0; i < gold.size(); ++i) {
    const std::set<Span> gold_set(gold[i].begin(), gold[i].end());
    for (const Span& s : gold_set) ++counts(s.category).gold;
    const std::set<Span> pred_set(pred[i].begin(), pred[i].end());
    for (const Span& s : pred_set) {
      ChunkCounts& c = counts(s.category);
      ++c.predicted;
      if (gold_set.contains(s)) ++c.true_positive;
    }
  }
  return report;
}

void PrintReport(std::ostream& out, const EvalReport& report) {
  char line[128];
  std::snprintf(line, sizeof(line), "%-8s %9s %9s %9s %6s %6s %6s\n",
                "category", "precision", "recall", "f1", "tp", "pred", "gold");
  out << line;
  auto row = [&](const char* name, const ChunkCounts& c) {
    std::snprintf(line, sizeof(line),
                  "%-8s %9.4f %9.4f %9.4f %6d %6d %6d\n", name, c.precision(),
                  c.recall(), c.f1(), c.true_positive, c.predicted, c.gold);
    out << line;
  };
  row("aspect", report.aspect);
  row("opinion", report.opinion);
}

void PrintReportKeyValues(std::ostream& out, const EvalReport& report) {
  char line[96];
  auto emit = [&](const char* name, const ChunkCounts& c) {
    std::snprintf(line, sizeof(line),
                  "%s.precision=%.4f\n%s.recall=%.4f\n%s.f1=%.4f\n", name,
                  c.precision(), name, c.recall(), name, c.f1());
    out << line << name << ".tp=" << c.true_positive << '\n'
        << name << ".pred=" << c.predicted << '\n'
        << name << ".gold=" << c.gold << '\n';
  };
  emit("aspect", report.aspect);
  emit("opinion", report.opinion);
}

std::vector<BioLabel> PredictLabels(const Model& model,
                                    const Sentence& sentence) {
  const std::vector<int> indices =
      PredictIndices(model, Prepare(model, sentence));
  std::vector<BioLabel> labels;
  labels.reserve(indices.size());
  for (int i : indices) labels.push_back(LabelAt(i, model.label_mode));
  return labels;
}

std::vector<Span> Tag(const Model& model, const Sentence& sentence) {
  return DecodeLabels(PredictLabels(model, sentence));
}

std::vector<Span> Tag(const Model& model, const Sentence& sentence,
                      const FeatureConfig& features) {
  if (features.dim() != model.feature_dim() ||
      features.pos != model.features.pos ||
      features.namelist != model.features.namelist ||
      features.lexicon != model.features.lexicon) {
    throw DataError("feature configuration '" + FeatureListString(features) +
                    "' (dim " + std::to_string(features.dim()) +
                    ") does not match the model's '" +
                    FeatureListString(model.features) + "' (dim " +
                    std::to_string(model.feature_dim()) + ")");
  }
  return Tag(model, sentence);
}

EvalReport Evaluate(const Model& model, const Corpus& corpus) {
  std::vector<std::vector<Span>> gold, pred;
  gold.reserve(corpus.sentences.size());
  pred.reserve(corpus.sentences.size());
  for (const Sentence& s : corpus.sentences) {
    std::vector<BioLabel> labels = s.labels();
    for (BioLabel& l : labels) l = ProjectLabel(l, model.label_mode);
    gold.push_back(DecodeLabels(labels));
    pred.push_back(Tag(model, s));
  }
  return ChunkF1(gold, pred);
}

}  // namespace rncrf

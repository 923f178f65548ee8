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

#ifndef RNCRF_EVAL_H_
#define RNCRF_EVAL_H_

#include <iosfwd>
#include <vector>

#include "rncrf/corpus.h"
#include "rncrf/features.h"
#include "rncrf/model.h"

namespace rncrf {

struct ChunkCounts {
  int true_positive = 0;
  int predicted = 0;
  int gold = 0;

  double precision() const;
  double recall() const;
  double f1() const;  // 0 when precision + recall is 0
};

struct EvalReport {
  ChunkCounts aspect;
  ChunkCounts opinion;
};

// Exact-match chunk scoring: a predicted span is correct only if a gold span
// has the same boundaries and category. Throws DataError if the sentence
// counts differ.
EvalReport ChunkF1(const std::vector<std::vector<Span>>& gold,
                   const std::vector<std::vector<Span>>& pred);

// Aligned text table with 4 decimals.
void PrintReport(std::ostream& out, const EvalReport& report);
// `aspect.precision=...` style lines.
void PrintReportKeyValues(std::ostream& out, const EvalReport& report);

std::vector<BioLabel> PredictLabels(const Model& model,
                                    const Sentence& sentence);

// Predicted spans of a sentence.
std::vector<Span> Tag(const Model& model, const Sentence& sentence);
// As above, but first checks that `features` matches what the model was
// trained with (DataError otherwise).
std::vector<Span> Tag(const Model& model, const Sentence& sentence,
                      const FeatureConfig& features);

// Tags every sentence of `corpus` and scores against its labels.
EvalReport Evaluate(const Model& model, const Corpus& corpus);

}  // namespace rncrf

#endif  // RNCRF_EVAL_H_

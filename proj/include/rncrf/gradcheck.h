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

#ifndef RNCRF_GRADCHECK_H_
#define RNCRF_GRADCHECK_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rncrf/corpus.h"
#include "rncrf/model.h"

namespace rncrf {

// Comparison of analytic and central-difference gradients for one parameter
// class. The relative error is ||a - n|| / (||a|| + ||n||) over the class
// (0 when both vanish).
struct GradCheckClass {
  std::string name;
  int entries = 0;
  double relative_error = 0.0;
  double max_abs_error = 0.0;
};

struct GradCheckReport {
  std::vector<GradCheckClass> classes;
  double loss = 0.0;

  double max_relative_error() const;
  bool Passed(double tolerance) const;
};

// Adds `delta` to entry `index` (column-major) of class `name` in the
// analytic gradient before comparing; for testing the checker itself.
struct GradCorruption {
  std::string name;
  int index = 0;
  double delta = 0.0;
};

// Checks every trainable dense block and the embedding columns of the
// sentence's words ("W_e") against central finite differences of
// SentenceLoss with step `epsilon`.
GradCheckReport GradCheck(const Model& model, const Sentence& sentence,
                          double epsilon,
                          const std::optional<GradCorruption>& corruption =
                              std::nullopt);

void PrintGradCheckReport(std::ostream& out, const GradCheckReport& report,
                          double tolerance);

// Fills every parameter (including the zero-initialized CRF weights and
// bias) with draws from U(-scale, scale) so that all gradient paths are
// active.
void RandomizeParameters(Model& model, double scale, uint64_t seed);

}  // namespace rncrf

#endif  // RNCRF_GRADCHECK_H_

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

// Small generated corpora for smoke runs, gradient checks and tests.

#ifndef RNCRF_SYNTHETIC_H_
#define RNCRF_SYNTHETIC_H_

#include <cstdint>

#include "rncrf/corpus.h"
#include "rncrf/random.h"

namespace rncrf {

// Template-generated review sentences ("I love the pizza", "the service
// pleased us", "they really enjoy the wine list", ...) over the three
// relations nsubj, dobj and mod, with consistent aspect and opinion labels.
Corpus SyntheticReviewCorpus(int sentences, uint64_t seed);

// A sentence of `n` tokens with a uniformly random dependency tree, random
// relations among `relations` names, random universal POS tags and random
// labels from the full label set.
Sentence RandomSentence(int n, int relations, Rng& rng);

}  // namespace rncrf

#endif  // RNCRF_SYNTHETIC_H_

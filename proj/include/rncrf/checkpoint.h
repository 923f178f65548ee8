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

// Binary model checkpoints. Layout, all integers u32 and all reals f64,
// little-endian:
//
//   "RNCRF" 0x01
//   d, |L|, T, feature dim, relation count, vocabulary size
//   label names, relation names, vocabulary words (u32 length + UTF-8 each)
//   W_v, W_r for every relation id, b, W_e, W_0, W_-T..W_-1, W_+1..W_+T, V
//     (each row-major)
//   trailer: mode name, feature flags (bit 0 pos, 1 namelist, 2 lexicon),
//     name-list terms, name-list words, lexicon words (u32 count + strings)

#ifndef RNCRF_CHECKPOINT_H_
#define RNCRF_CHECKPOINT_H_

#include <iosfwd>
#include <string>

#include "rncrf/model.h"

namespace rncrf {

void SaveCheckpoint(const Model& model, std::ostream& out);
void SaveCheckpointFile(const Model& model, const std::string& path);

// Throws DataError on a bad magic/version, truncation or inconsistent
// dimensions. Nothing is returned unless the whole file is valid.
Model LoadCheckpoint(std::istream& in);
Model LoadCheckpointFile(const std::string& path);

}  // namespace rncrf

#endif  // RNCRF_CHECKPOINT_H_

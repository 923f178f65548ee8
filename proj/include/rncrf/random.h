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

#ifndef RNCRF_RANDOM_H_
#define RNCRF_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace rncrf {

using Rng = std::mt19937_64;

// Half-width of the uniform interval used for every randomly initialized
// matrix of a d-dimensional model: sqrt(6) / sqrt(2d + 1).
inline double UniformInitBound(int d) {
  return std::sqrt(6.0) / std::sqrt(2.0 * d + 1.0);
}

// Fills `m` column by column with draws from U[-bound, bound).
inline void FillUniform(Eigen::Ref<Eigen::MatrixXd> m, double bound,
                        Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = dist(rng);
  }
}

// Derives an independent stream from a base seed and a small tag (epoch,
// purpose), so that e.g. per-epoch shuffles do not depend on how many draws
// earlier epochs consumed.
inline Rng DerivedRng(uint64_t seed, uint64_t tag) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(tag), static_cast<uint32_t>(tag >> 32)};
  return Rng(seq);
}

}  // namespace rncrf

#endif  // RNCRF_RANDOM_H_

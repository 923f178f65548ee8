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

// Linear-chain CRF over a sequence of input vectors v_1..v_n (columns of a
// D x n matrix). The log-potential of label y at position k reads a window
// of 2T+1 inputs:
//
//   s(k, y) = (W_0)_y . v_k + sum_{t=1..T} (W_-t)_y . v_{k-t}
//                           + sum_{t=1..T} (W_+t)_y . v_{k+t}
//
// where positions outside the sentence contribute nothing. A labeling y
// scores sum_k s(k, y_k) + sum_k V(y_k, y_{k+1}); there are no start or
// stop transitions. All inference runs in log space.

#ifndef RNCRF_CRF_H_
#define RNCRF_CRF_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rncrf {

struct UnaryWeights {
  Eigen::MatrixXd w0;                // |L| x D
  std::vector<Eigen::MatrixXd> left;   // left[t-1] = W_-t
  std::vector<Eigen::MatrixXd> right;  // right[t-1] = W_+t

  static UnaryWeights Zeros(int labels, int input_dim, int window);

  int window() const { return static_cast<int>(left.size()); }
  int labels() const { return static_cast<int>(w0.rows()); }
  int input_dim() const { return static_cast<int>(w0.cols()); }
};

// n x |L|, entry (k, y) is the unary log-potential of label y at k.
using ScoreTable = Eigen::MatrixXd;
// |L| x |L|, V(y, y') scores label y followed by y'.
using TransitionMatrix = Eigen::MatrixXd;

struct Marginals {
  Eigen::MatrixXd unary;                  // n x |L|
  std::vector<Eigen::MatrixXd> pairwise;  // n-1 slices of |L| x |L|
  double log_z = 0.0;
};

ScoreTable UnaryScores(const Eigen::MatrixXd& inputs,
                       const UnaryWeights& weights);

double LogPartition(const ScoreTable& scores, const TransitionMatrix& v);

Marginals ComputeMarginals(const ScoreTable& scores,
                           const TransitionMatrix& v);

// Highest-scoring labeling. Among equally scored labelings the one with the
// smallest label at the last position where they differ wins.
std::vector<int> Viterbi(const ScoreTable& scores, const TransitionMatrix& v);

// Unnormalized log score of one labeling.
double SequenceScore(const ScoreTable& scores, const TransitionMatrix& v,
                     std::span<const int> labels);

struct CrfGradients {
  UnaryWeights unary;
  Eigen::MatrixXd v;
  Eigen::MatrixXd inputs;  // D x n
};

struct CrfLoss {
  double nll = 0.0;
  CrfGradients grads;
};

// Negative log-likelihood of `gold` and its gradients. The input gradient of
// position k sums the contributions of every clique whose window covers k.
CrfLoss NllAndGradients(const Eigen::MatrixXd& inputs,
                        std::span<const int> gold,
                        const UnaryWeights& weights,
                        const TransitionMatrix& v);

}  // namespace rncrf

#endif  // RNCRF_CRF_H_

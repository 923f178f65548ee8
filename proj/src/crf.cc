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

#include "rncrf/crf.h"

#include <cmath>
#include <limits>

namespace rncrf {

namespace {

// Eigen's vectorized exp clamps large negative inputs instead of
// underflowing to 0, which leaves ~1e-306 residue in saturated marginals.
double Exp(double v) { return std::exp(v); }

double LogSumExp(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double max = x.maxCoeff();
  if (!std::isfinite(max)) return max;
  return max + std::log((x.array() - max).unaryExpr(&Exp).sum());
}

// alpha(k, y): log-sum of all prefixes ending in y at k, including s(k, y).
Eigen::MatrixXd ForwardTable(const ScoreTable& scores,
                             const TransitionMatrix& v) {
  const Eigen::Index n = scores.rows(), labels = scores.cols();
  Eigen::MatrixXd alpha(n, labels);
  if (n == 0) return alpha;
  alpha.row(0) = scores.row(0);
  Eigen::VectorXd terms(labels);
  for (Eigen::Index k = 1; k < n; ++k) {
    for (Eigen::Index y = 0; y < labels; ++y) {
      terms = alpha.row(k - 1).transpose() + v.col(y);
      alpha(k, y) = LogSumExp(terms) + scores(k, y);
    }
  }
  return alpha;
}

// beta(k, y): log-sum of all suffixes after k given y at k.
Eigen::MatrixXd BackwardTable(const ScoreTable& scores,
                              const TransitionMatrix& v) {
  const Eigen::Index n = scores.rows(), labels = scores.cols();
  Eigen::MatrixXd beta(n, labels);
  if (n == 0) return beta;
  beta.row(n - 1).setZero();
  Eigen::VectorXd terms(labels);
  for (Eigen::Index k = n - 2; k >= 0; --k) {
    for (Eigen::Index y = 0; y < labels; ++y) {
      terms = v.row(y).transpose() + scores.row(k + 1).transpose() +
              beta.row(k + 1).transpose();
      beta(k, y) = LogSumExp(terms);
    }
  }
  return beta;
}

}  // namespace

UnaryWeights UnaryWeights::Zeros(int labels, int input_dim, int window) {
  UnaryWeights w;
  w.w0 = Eigen::MatrixXd::Zero(labels, input_dim);
  w.left.assign(window, Eigen::MatrixXd::Zero(labels, input_dim));
  w.right.assign(window, Eigen::MatrixXd::Zero(labels, input_dim));
  return w;
}

ScoreTable UnaryScores(const Eigen::MatrixXd& inputs,
                       const UnaryWeights& weights) {
  const Eigen::Index n = inputs.cols();
  // (|L| x n) then transposed to n x |L|.
  Eigen::MatrixXd s = weights.w0 * inputs;
  for (int t = 1; t <= weights.window() && t < n; ++t) {
    // Left context: position k reads v_{k-t} for k >= t.
    s.rightCols(n - t).noalias() +=
        weights.left[t - 1] * inputs.leftCols(n - t);
    // Right context: position k reads v_{k+t} for k < n - t.
    s.leftCols(n - t).noalias() +=
        weights.right[t - 1] * inputs.rightCols(n - t);
  }
  return s.transpose();
}

double LogPartition(const ScoreTable& scores, const TransitionMatrix& v) {
  if (scores.rows() == 0) return 0.0;
  Eigen::MatrixXd alpha = ForwardTable(scores, v);
  return LogSumExp(alpha.row(scores.rows() - 1).transpose());
}

Marginals ComputeMarginals(const ScoreTable& scores,
                           const TransitionMatrix& v) {
  const Eigen::Index n = scores.rows(), labels = scores.cols();
  Marginals m;
  if (n == 0) return m;
  Eigen::MatrixXd alpha = ForwardTable(scores, v);
  Eigen::MatrixXd beta = BackwardTable(scores, v);
  m.log_z = LogSumExp(alpha.row(n - 1).transpose());
  m.unary = (alpha + beta).array() - m.log_z;
  m.unary = m.unary.unaryExpr(&Exp);
  m.pairwise.reserve(n - 1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    Eigen::MatrixXd p(labels, labels);
    for (Eigen::Index y = 0; y < labels; ++y) {
      for (Eigen::Index y2 = 0; y2 < labels; ++y2) {
        p(y, y2) = std::exp(alpha(k, y) + v(y, y2) + scores(k + 1, y2) +
                            beta(k + 1, y2) - m.log_z);
      }
    }
    m.pairwise.push_back(std::move(p));
  }
  return m;
}

std::vector<int> Viterbi(const ScoreTable& scores, const TransitionMatrix& v) {
  const Eigen::Index n = scores.rows(), labels = scores.cols();
  std::vector<int> path(n);
  if (n == 0) return path;
  Eigen::MatrixXd best(n, labels);
  Eigen::MatrixXi back(n, labels);
  best.row(0) = scores.row(0);
  for (Eigen::Index k = 1; k < n; ++k) {
    for (Eigen::Index y = 0; y < labels; ++y) {
      // Strict comparison keeps the smallest predecessor on ties.
      double top = -std::numeric_limits<double>::infinity();
      int arg = 0;
      for (Eigen::Index prev = 0; prev < labels; ++prev) {
        const double s = best(k - 1, prev) + v(prev, y);
        if (s > top) {
          top = s;
          arg = static_cast<int>(prev);
        }
      }
      best(k, y) = top + scores(k, y);
      back(k, y) = arg;
    }
  }
  Eigen::Index last = 0;
  best.row(n - 1).maxCoeff(&last);  // first maximum on ties
  path[n - 1] = static_cast<int>(last);
  for (Eigen::Index k = n - 1; k > 0; --k) path[k - 1] = back(k, path[k]);
  return path;
}

double SequenceScore(const ScoreTable& scores, const TransitionMatrix& v,
                     std::span<const int> labels) {
  double total = 0.0;
  for (size_t k = 0; k < labels.size(); ++k) {
    total += scores(k, labels[k]);
    if (k + 1 < labels.size()) total += v(labels[k], labels[k + 1]);
  }
  return total;
}

CrfLoss NllAndGradients(const Eigen::MatrixXd& inputs,
                        std::span<const int> gold,
                        const UnaryWeights& weights,
                        const TransitionMatrix& v) {
  const Eigen::Index n = inputs.cols();
  const int labels = weights.labels();
  const int window = weights.window();
  CrfLoss loss;
  CrfGradients& g = loss.grads;
  g.unary = UnaryWeights::Zeros(labels, weights.input_dim(), window);
  g.v = Eigen::MatrixXd::Zero(labels, labels);
  g.inputs = Eigen::MatrixXd::Zero(inputs.rows(), n);
  if (n == 0) return loss;

  const ScoreTable scores = UnaryScores(inputs, weights);
  const Marginals m = ComputeMarginals(scores, v);
  loss.nll = m.log_z - SequenceScore(scores, v, gold);

  // d nll / d s(k, y) = p(y_k = y) - 1{y = gold_k}, stored |L| x n.
  Eigen::MatrixXd ds = m.unary.transpose();
  for (Eigen::Index k = 0; k < n; ++k) ds(gold[k], k) -= 1.0;

  g.unary.w0.noalias() = ds * inputs.transpose();
  g.inputs.noalias() = weights.w0.transpose() * ds;
  for (int t = 1; t <= window && t < n; ++t) {
    g.unary.left[t - 1].noalias() =
        ds.rightCols(n - t) * inputs.leftCols(n - t).transpose();
    g.unary.right[t - 1].noalias() =
        ds.leftCols(n - t) * inputs.rightCols(n - t).transpose();
    g.inputs.leftCols(n - t).noalias() +=
        weights.left[t - 1].transpose() * ds.rightCols(n - t);
    g.inputs.rightCols(n - t).noalias() +=
        weights.right[t - 1].transpose() * ds.leftCols(n - t);
  }
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    g.v += m.pairwise[k];
    g.v(gold[k], gold[k + 1]) -= 1.0;
  }
  return loss;
}

}  // namespace rncrf

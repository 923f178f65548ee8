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

// Reference implementations used only by tests: exhaustive enumeration over
// label sequences and central finite differences. Deliberately naive.

#ifndef RNCRF_TESTS_ORACLES_H_
#define RNCRF_TESTS_ORACLES_H_

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace rncrf::testing {

struct BruteForceCrf {
  double log_z = 0.0;
  Eigen::MatrixXd unary;                  // n x L
  std::vector<Eigen::MatrixXd> pairwise;  // n-1 of L x L
  std::vector<int> argmax;
  double best_score = 0.0;
};

// Calls fn(sequence) for every sequence in [0, labels)^n, first position
// varying slowest.
inline void ForEachSequence(int n, int labels,
                            const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> y(n, 0);
  while (true) {
    fn(y);
    int k = n - 1;
    while (k >= 0 && ++y[k] == labels) y[k--] = 0;
    if (k < 0) return;
  }
}

inline double NaiveScore(const Eigen::MatrixXd& scores,
                         const Eigen::MatrixXd& v, const std::vector<int>& y) {
  double s = 0.0;
  for (size_t k = 0; k < y.size(); ++k) {
    s += scores(k, y[k]);
    if (k > 0) s += v(y[k - 1], y[k]);
  }
  return s;
}

// True if `a` should win a tie against `b`: smaller label at the last
// position where they differ.
inline bool PreferOnTie(const std::vector<int>& a, const std::vector<int>& b) {
  for (size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

inline BruteForceCrf EnumerateCrf(const Eigen::MatrixXd& scores,
                                  const Eigen::MatrixXd& v) {
  const int n = static_cast<int>(scores.rows());
  const int labels = static_cast<int>(scores.cols());
  BruteForceCrf out;
  std::vector<double> all;
  std::vector<std::vector<int>> seqs;
  ForEachSequence(n, labels, [&](const std::vector<int>& y) {
    all.push_back(NaiveScore(scores, v, y));
    seqs.push_back(y);
  });
  double top = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < all.size(); ++i) {
    if (all[i] > top || (all[i] == top && PreferOnTie(seqs[i], out.argmax))) {
      top = all[i];
      out.argmax = seqs[i];
    }
  }
  out.best_score = top;
  double sum = 0.0;
  for (double s : all) sum += std::exp(s - top);
  out.log_z = top + std::log(sum);
  out.unary = Eigen::MatrixXd::Zero(n, labels);
  out.pairwise.assign(std::max(n - 1, 0),
                      Eigen::MatrixXd::Zero(labels, labels));
  for (size_t i = 0; i < all.size(); ++i) {
    const double p = std::exp(all[i] - out.log_z);
    for (int k = 0; k < n; ++k) {
      out.unary(k, seqs[i][k]) += p;
      if (k > 0) out.pairwise[k - 1](seqs[i][k - 1], seqs[i][k]) += p;
    }
  }
  return out;
}

// Central differences of f with respect to every entry of `x`, which f is
// expected to read (x is restored afterwards).
inline Eigen::MatrixXd NumericGradient(Eigen::MatrixXd& x,
                                       const std::function<double()>& f,
                                       double eps = 1e-6) {
  Eigen::MatrixXd g(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double saved = x(i);
    x(i) = saved + eps;
    const double plus = f();
    x(i) = saved - eps;
    const double minus = f();
    x(i) = saved;
    g(i) = (plus - minus) / (2 * eps);
  }
  return g;
}

inline double RelativeError(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double denom = a.norm() + b.norm();
  return denom == 0.0 ? 0.0 : (a - b).norm() / denom;
}

}  // namespace rncrf::testing

#endif  // RNCRF_TESTS_ORACLES_H_

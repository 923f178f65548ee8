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

// Recursive network over dependency trees. Every token owns a hidden vector
//
//   h_n = tanh(W_v x_n + b + sum_{k child of n} W_{rel(n,k)} h_k)
//
// computed bottom-up, and errors flow top-down from each node to its
// children during backpropagation.

#ifndef RNCRF_DTRNN_H_
#define RNCRF_DTRNN_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "rncrf/corpus.h"

namespace rncrf {

// Dependency relation names with a reserved id for relations never seen
// while the table was built.
class RelationTable {
 public:
  static constexpr int kUnkRel = 0;
  static constexpr std::string_view kUnkRelName = "<unk-rel>";

  RelationTable();

  int Add(std::string_view relation);
  int Lookup(std::string_view relation) const;

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int id) const { return names_[id]; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

// Relations of non-root tokens, sorted by name after <unk-rel>.
RelationTable BuildRelationTable(const Corpus& corpus);

// Rooted tree over 0-based token positions.
struct DepTree {
  struct Edge {
    int node = 0;
    int relation = RelationTable::kUnkRel;
  };

  int n = 0;
  int root = 0;
  std::vector<std::vector<Edge>> children;  // sorted by child position
  std::vector<std::optional<Edge>> parent;
  std::vector<int> post_order;              // children before parents
};

// Throws DataError naming the sentence if the heads contain a cycle.
DepTree BuildTree(const Sentence& sentence, const RelationTable& relations);

struct DtrnnParams {
  Eigen::MatrixXd w_v;               // d x d
  std::vector<Eigen::MatrixXd> w_r;  // one d x d matrix per relation id
  Eigen::VectorXd b;                 // d
  EmbeddingMatrix w_e;               // d x v

  int dim() const { return static_cast<int>(b.size()); }
};

// W_v and every W_r drawn from U(-b, b), b = sqrt(6)/sqrt(2d+1); bias zero.
// The embedding matrix is left empty for the caller to attach.
DtrnnParams InitDtrnnParams(int d, const RelationTable& relations,
                            uint64_t seed);

struct HiddenStates {
  Eigen::MatrixXd h;  // d x n
  Eigen::MatrixXd z;  // pre-activations, d x n
};

// `words` holds the vocabulary index of every token.
HiddenStates Forward(const DepTree& tree, const DtrnnParams& params,
                     std::span<const int> words);

struct DtrnnGradients {
  Eigen::MatrixXd w_v;
  std::vector<Eigen::MatrixXd> w_r;
  Eigen::VectorXd b;
  // Sparse embedding gradient, keyed by vocabulary index.
  std::map<int, Eigen::VectorXd> w_e;

  static DtrnnGradients ZerosLike(const DtrnnParams& params);
  DtrnnGradients& operator+=(const DtrnnGradients& other);
};

// Backpropagation through structure. `dh` holds the error arriving at each
// hidden vector from outside the tree (d x n). The root keeps only its own
// error; every other node adds the error its parent sends down through the
// relation matrix of their edge.
DtrnnGradients Backward(const DepTree& tree, const DtrnnParams& params,
                        const HiddenStates& states, std::span<const int> words,
                        const Eigen::MatrixXd& dh);

struct SoftmaxResult {
  double loss = 0.0;           // mean token cross-entropy
  Eigen::MatrixXd d_inputs;    // D x n
  Eigen::MatrixXd d_head;      // |L| x D
};

// Per-token softmax classifier over the columns of `inputs` (D x n) with
// weights `head` (|L| x D) and no bias.
SoftmaxResult SoftmaxHead(const Eigen::MatrixXd& inputs,
                          const Eigen::MatrixXd& head,
                          std::span<const int> gold);

}  // namespace rncrf

#endif  // RNCRF_DTRNN_H_

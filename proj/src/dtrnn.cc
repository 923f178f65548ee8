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

#include "rncrf/dtrnn.h"

#include <cmath>
#include <set>

#include "rncrf/errors.h"
#include "rncrf/random.h"

namespace rncrf {

RelationTable::RelationTable() { Add(kUnkRelName); }

int RelationTable::Add(std::string_view relation) {
  auto it = ids_.find(std::string(relation));
  if (it != ids_.end()) return it->second;
  const int id = size();
  ids_.emplace(std::string(relation), id);
  names_.emplace_back(relation);
  return id;
}

int RelationTable::Lookup(std::string_view relation) const {
  auto it = ids_.find(std::string(relation));
  return it == ids_.end() ? kUnkRel : it->second;
}

RelationTable BuildRelationTable(const Corpus& corpus) {
  std::set<std::string> names;
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens) {
      if (t.head != 0) names.insert(t.relation);
    }
  }
  RelationTable table;
  for (const std::string& name : names) table.Add(name);
  return table;
}

DepTree BuildTree(const Sentence& sentence, const RelationTable& relations) {
  DepTree tree;
  tree.n = sentence.size();
  tree.children.resize(tree.n);
  tree.parent.resize(tree.n);
  tree.root = -1;
  for (int i = 0; i < tree.n; ++i) {
    const Token& t = sentence.tokens[i];
    if (t.head == 0) {
      if (tree.root >= 0) {
        throw DataError("sentence " + sentence.id + ": multiple roots");
      }
      tree.root = i;
      continue;
    }
    if (t.head < 0 || t.head > tree.n || t.head == i + 1) {
      throw DataError("sentence " + sentence.id + ": bad head at token " +
                      std::to_string(i + 1));
    }
    const int rel = relations.Lookup(t.relation);
    tree.parent[i] = DepTree::Edge{t.head - 1, rel};
    tree.children[t.head - 1].push_back(DepTree::Edge{i, rel});
  }
  if (tree.root < 0) {
    throw DataError("sentence " + sentence.id + ": no root");
  }

  // Iterative post-order from the root; children visited by position.
  std::vector<bool> visited(tree.n, false);
  std::vector<std::pair<int, size_t>> stack = {{tree.root, 0}};
  visited[tree.root] = true;
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < tree.children[node].size()) {
      const int child = tree.children[node][next++].node;
      visited[child] = true;
      stack.emplace_back(child, 0);
    } else {
      tree.post_order.push_back(node);
      stack.pop_back();
    }
  }
  if (static_cast<int>(tree.post_order.size()) != tree.n) {
    throw DataError("sentence " + sentence.id +
                    ": dependency heads contain a cycle");
  }
  return tree;
}

DtrnnParams InitDtrnnParams(int d, const RelationTable& relations,
                            uint64_t seed) {
  Rng rng(seed);
  const double bound = UniformInitBound(d);
  DtrnnParams params;
  params.w_v.resize(d, d);
  FillUniform(params.w_v, bound, rng);
  params.w_r.resize(relations.size());
  for (Eigen::MatrixXd& w : params.w_r) {
    w.resize(d, d);
    FillUniform(w, bound, rng);
  }
  params.b = Eigen::VectorXd::Zero(d);
  params.w_e.resize(d, 0);
  return params;
}

HiddenStates Forward(const DepTree& tree, const DtrnnParams& params,
                     std::span<const int> words) {
  const int d = params.dim();
  HiddenStates states;
  states.h.resize(d, tree.n);
  states.z.resize(d, tree.n);
  for (int node : tree.post_order) {
    Eigen::VectorXd z = params.w_v * params.w_e.col(words[node]) + params.b;
    for (const DepTree::Edge& child : tree.children[node]) {
      z.noalias() += params.w_r[child.relation] * states.h.col(child.node);
    }
    states.z.col(node) = z;
    states.h.col(node) = z.array().tanh();
  }
  return states;
}

DtrnnGradients DtrnnGradients::ZerosLike(const DtrnnParams& params) {
  const int d = params.dim();
  DtrnnGradients g;
  g.w_v = Eigen::MatrixXd::Zero(d, d);
  g.w_r.assign(params.w_r.size(), Eigen::MatrixXd::Zero(d, d));
  g.b = Eigen::VectorXd::Zero(d);
  return g;
}

DtrnnGradients& DtrnnGradients::operator+=(const DtrnnGradients& other) {
  w_v += other.w_v;
  for (size_t r = 0; r < w_r.size(); ++r) w_r[r] += other.w_r[r];
  b += other.b;
  for (const auto& [word, grad] : other.w_e) {
    auto [it, inserted] = w_e.try_emplace(word, grad);
    if (!inserted) it->second += grad;
  }
  return *this;
}

DtrnnGradients Backward(const DepTree& tree, const DtrnnParams& params,
                        const HiddenStates& states, std::span<const int> words,
                        const Eigen::MatrixXd& dh) {
  const int d = params.dim();
  DtrnnGradients grads = DtrnnGradients::ZerosLike(params);
  // Error on each node's pre-activation.
  Eigen::MatrixXd dz(d, tree.n);
  for (auto it = tree.post_order.rbegin(); it != tree.post_order.rend();
       ++it) {
    const int node = *it;
    Eigen::VectorXd total = dh.col(node);
    if (const auto& parent = tree.parent[node]) {
      total.noalias() +=
          params.w_r[parent->relation].transpose() * dz.col(parent->node);
    }
    dz.col(node) =
        total.array() * (1.0 - states.h.col(node).array().square());
  }
  for (int node = 0; node < tree.n; ++node) {
    const auto delta = dz.col(node);
    const int word = words[node];
    grads.w_v.noalias() += delta * params.w_e.col(word).transpose();
    grads.b += delta;
    for (const DepTree::Edge& child : tree.children[node]) {
      grads.w_r[child.relation].noalias() +=
          delta * states.h.col(child.node).transpose();
    }
    Eigen::VectorXd dx = params.w_v.transpose() * delta;
    auto [slot, inserted] = grads.w_e.try_emplace(word, dx);
    if (!inserted) slot->second += dx;
  }
  return grads;
}

SoftmaxResult SoftmaxHead(const Eigen::MatrixXd& inputs,
                          const Eigen::MatrixXd& head,
                          std::span<const int> gold) {
  const int n = static_cast<int>(inputs.cols());
  SoftmaxResult result;
  Eigen::MatrixXd scores = head * inputs;  // |L| x n
  Eigen::MatrixXd dscores(scores.rows(), n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const double max = scores.col(k).maxCoeff();
    // std::exp underflows to exactly 0; Eigen's vectorized exp clamps.
    Eigen::VectorXd p = (scores.col(k).array() - max).unaryExpr(
        [](double v) { return std::exp(v); });
    const double sum = p.sum();
    p /= sum;
    total += -(scores(gold[k], k) - max - std::log(sum));
    p(gold[k]) -= 1.0;
    dscores.col(k) = p;
  }
  const double scale = n > 0 ? 1.0 / n : 0.0;
  result.loss = total * scale;
  dscores *= scale;
  result.d_inputs = head.transpose() * dscores;
  result.d_head = dscores * inputs.transpose();
  return result;
}

}  // namespace rncrf

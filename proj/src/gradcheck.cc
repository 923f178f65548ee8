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

#include "rncrf/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "rncrf/random.h"

namespace rncrf {

namespace {

struct Accumulator {
  double diff_sq = 0.0;
  double analytic_sq = 0.0;
  double numeric_sq = 0.0;
  double max_abs = 0.0;
  int entries = 0;

  void Add(double analytic, double numeric) {
    const double diff = analytic - numeric;
    diff_sq += diff * diff;
    analytic_sq += analytic * analytic;
    numeric_sq += numeric * numeric;
    max_abs = std::max(max_abs, std::abs(diff));
    ++entries;
  }

  GradCheckClass Finish(std::string name) const {
    GradCheckClass c;
    c.name = std::move(name);
    c.entries = entries;
    c.max_abs_error = max_abs;
    const double denom = std::sqrt(analytic_sq) + std::sqrt(numeric_sq);
    c.relative_error = denom > 0 ? std::sqrt(diff_sq) / denom : 0.0;
    return c;
  }
};

double CentralDifference(const Model& model, const PreparedSentence& s,
                         double& entry, double epsilon) {
  const double saved = entry;
  entry = saved + epsilon;
  const double plus = SentenceLoss(model, s, nullptr);
  entry = saved - epsilon;
  const double minus = SentenceLoss(model, s, nullptr);
  entry = saved;
  return (plus - minus) / (2.0 * epsilon);
}

}  // namespace

double GradCheckReport::max_relative_error() const {
  double worst = 0.0;
  for (const GradCheckClass& c : classes) {
    worst = std::max(worst, c.relative_error);
  }
  return worst;
}

bool GradCheckReport::Passed(double tolerance) const {
  for (const GradCheckClass& c : classes) {
    if (!(c.relative_error <= tolerance)) return false;
  }
  return true;
}

GradCheckReport GradCheck(const Model& model, const Sentence& sentence,
                          double epsilon,
                          const std::optional<GradCorruption>& corruption) {
  Model work = model;
  const PreparedSentence prepared = Prepare(work, sentence);
  ModelGradients analytic = ModelGradients::ZerosLike(work);
  GradCheckReport report;
  report.loss = SentenceLoss(work, prepared, &analytic);

  ForEachDenseBlock(
      work, analytic,
      [&](const std::string& name, Eigen::Ref<Eigen::MatrixXd> param,
          Eigen::Ref<const Eigen::MatrixXd> grad) {
        Accumulator acc;
        for (Eigen::Index i = 0; i < param.size(); ++i) {
          double a = grad(i % grad.rows(), i / grad.rows());
          if (corruption && corruption->name == name && corruption->index == i) {
            a += corruption->delta;
          }
          double& entry = param(i % param.rows(), i / param.rows());
          acc.Add(a, CentralDifference(work, prepared, entry, epsilon));
        }
        report.classes.push_back(acc.Finish(name));
      });

  Accumulator emb;
  const std::set<int> words(prepared.words.begin(), prepared.words.end());
  int flat = 0;
  for (int word : words) {
    auto it = analytic.dtrnn.w_e.find(word);
    for (int r = 0; r < work.dim(); ++r, ++flat) {
      double a = it == analytic.dtrnn.w_e.end() ? 0.0 : it->second(r);
      if (corruption && corruption->name == "W_e" && corruption->index == flat) {
        a += corruption->delta;
      }
      double& entry = work.dtrnn.w_e(r, word);
      emb.Add(a, CentralDifference(work, prepared, entry, epsilon));
    }
  }
  report.classes.push_back(emb.Finish("W_e"));
  return report;
}

void PrintGradCheckReport(std::ostream& out, const GradCheckReport& report,
                          double tolerance) {
  char line[160];
  std::snprintf(line, sizeof(line), "%-20s %8s %14s %14s  %s\n", "class",
                "entries", "rel_error", "max_abs_error", "status");
  out << line;
  for (const GradCheckClass& c : report.classes) {
    std::snprintf(line, sizeof(line), "%-20s %8d %14.3e %14.3e  %s\n",
                  c.name.c_str(), c.entries, c.relative_error,
                  c.max_abs_error,
                  c.relative_error <= tolerance ? "ok" : "FAIL");
    out << line;
  }
}

void RandomizeParameters(Model& model, double scale, uint64_t seed) {
  Rng rng(seed);
  FillUniform(model.dtrnn.w_v, scale, rng);
  for (auto& w : model.dtrnn.w_r) FillUniform(w, scale, rng);
  FillUniform(model.dtrnn.b, scale, rng);
  FillUniform(model.dtrnn.w_e, scale, rng);
  FillUniform(model.unary.w0, scale, rng);
  for (auto& w : model.unary.left) FillUniform(w, scale, rng);
  for (auto& w : model.unary.right) FillUniform(w, scale, rng);
  if (model.mode != Mode::kDtrnnSoftmax) {
    FillUniform(model.transitions, scale, rng);
  }
}

}  // namespace rncrf

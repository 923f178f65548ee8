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

#include "rncrf/eval.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rncrf/errors.h"
#include "rncrf/gradcheck.h"
#include "rncrf/synthetic.h"
#include "rncrf/training.h"

namespace rncrf {
namespace {

using Spans = std::vector<std::vector<Span>>;
constexpr Category kA = Category::kAspect;
constexpr Category kP = Category::kOpinion;

TEST(ChunkF1Test, IdenticalIsPerfect) {
  const Spans gold = {{{1, 2, kA}, {4, 4, kP}}, {{2, 3, kA}}};
  const EvalReport r = ChunkF1(gold, gold);
  EXPECT_EQ(r.aspect.f1(), 1.0);
  EXPECT_EQ(r.opinion.f1(), 1.0);
  EXPECT_EQ(r.aspect.precision(), 1.0);
  EXPECT_EQ(r.aspect.recall(), 1.0);
}

TEST(ChunkF1Test, BoundariesMustMatchExactly) {
  const EvalReport r = ChunkF1({{{1, 2, kA}}}, {{{1, 1, kA}}});
  EXPECT_EQ(r.aspect.f1(), 0.0);
}

TEST(ChunkF1Test, HalfRecall) {
  const EvalReport r = ChunkF1({{{1, 1, kA}, {3, 4, kA}}}, {{{3, 4, kA}}});
  EXPECT_EQ(r.aspect.precision(), 1.0);
  EXPECT_EQ(r.aspect.recall(), 0.5);
  EXPECT_NEAR(r.aspect.f1(), 2.0 / 3.0, 1e-15);
  // Nothing predicted, nothing gold: all zeros rather than NaN.
  EXPECT_EQ(r.opinion.f1(), 0.0);
}

TEST(ChunkF1Test, CategoryMustMatch) {
  const EvalReport r = ChunkF1({{{2, 2, kA}}}, {{{2, 2, kP}}});
  EXPECT_EQ(r.aspect.true_positive, 0);
  EXPECT_EQ(r.opinion.predicted, 1);
}

TEST(ChunkF1Test, SentenceCountMismatch) {
  EXPECT_THROW(ChunkF1({{}, {}}, {{}}), DataError);
}

TEST(ReportTest, KeyValueLines) {
  std::ostringstream out;
  PrintReportKeyValues(out, ChunkF1({{{1, 1, kA}}}, {{{1, 1, kA}}}));
  EXPECT_NE(out.str().find("aspect.f1=1.0000\n"), std::string::npos);
  EXPECT_NE(out.str().find("opinion.f1=0.0000\n"), std::string::npos);
}

Sentence LikeTheFood() {
  Sentence s;
  const char* words[] = {"I", "like", "the", "food"};
  const char* tags[] = {"PRON", "VERB", "DET", "NOUN"};
  const int heads[] = {2, 0, 4, 2};
  const char* rels[] = {"nsubj", "root", "det", "dobj"};
  const BioLabel labels[] = {BioLabel::kO, BioLabel::kBO, BioLabel::kO,
                             BioLabel::kBA};
  for (int i = 0; i < 4; ++i) {
    Token t;
    t.surface = words[i];
    t.pos = tags[i];
    t.head = heads[i];
    t.relation = rels[i];
    t.label = labels[i];
    s.tokens.push_back(t);
  }
  return s;
}

TEST(TagTest, OverfitOneSentence) {
  Corpus corpus;
  corpus.sentences.push_back(LikeTheFood());
  TrainConfig config;
  config.dim = 8;
  config.window = 1;
  config.pretrain_epochs = 5;
  config.epochs = 100;
  config.lr = 0.05;
  const Model m = TrainPipeline(corpus, config, {});
  EXPECT_EQ(Tag(m, corpus.sentences[0]),
            (std::vector<Span>{{2, 2, kP}, {4, 4, kA}}));
}

TEST(TagTest, FeatureConfigMustMatchModel) {
  const Corpus corpus = SyntheticReviewCorpus(10, 1);
  TrainConfig config;
  config.dim = 6;
  config.features = ParseFeatureList("pos");
  const Model m = InitModel(corpus, config, {});
  EXPECT_THROW(Tag(m, corpus.sentences[0], FeatureConfig{}), DataError);
  EXPECT_NO_THROW(Tag(m, corpus.sentences[0], ParseFeatureList("pos")));
}

TEST(TagTest, SingleToken) {
  Corpus corpus;
  Sentence s;
  s.tokens.push_back(Token{"great", "ADJ", 0, "root", BioLabel::kBO, ""});
  corpus.sentences.push_back(s);
  TrainConfig config;
  config.dim = 4;
  const Model m = InitModel(corpus, config, {});
  EXPECT_LE(Tag(m, s).size(), 1u);
}

TEST(GradCheckTest, RandomSmallModelPasses) {
  Rng rng(1);
  Corpus corpus;
  corpus.sentences.push_back(RandomSentence(5, 3, rng));
  TrainConfig config;
  config.dim = 6;
  config.window = 1;
  Model m = InitModel(corpus, config, {});
  RandomizeParameters(m, 0.5, 2);
  const GradCheckReport report = GradCheck(m, corpus.sentences[0], 1e-5);
  EXPECT_TRUE(report.Passed(1e-4)) << report.max_relative_error();
  std::vector<std::string> names;
  for (const auto& c : report.classes) names.push_back(c.name);
  for (const char* want : {"W_v", "b", "W_0", "W_-1", "W_+1", "V", "W_e"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
}

TEST(GradCheckTest, LengthOneSentence) {
  Rng rng(2);
  Corpus corpus;
  corpus.sentences.push_back(RandomSentence(1, 1, rng));
  TrainConfig config;
  config.dim = 3;
  config.window = 2;
  Model m = InitModel(corpus, config, {});
  RandomizeParameters(m, 0.5, 3);
  const GradCheckReport report = GradCheck(m, corpus.sentences[0], 1e-5);
  EXPECT_TRUE(std::isfinite(report.max_relative_error()));
  EXPECT_TRUE(report.Passed(1e-4));
}

TEST(GradCheckTest, CorruptionIsFlagged) {
  Rng rng(3);
  Corpus corpus;
  corpus.sentences.push_back(RandomSentence(5, 3, rng));
  TrainConfig config;
  config.dim = 6;
  config.window = 1;
  Model m = InitModel(corpus, config, {});
  RandomizeParameters(m, 0.5, 4);
  const GradCheckReport report = GradCheck(
      m, corpus.sentences[0], 1e-5, GradCorruption{"W_v", 3, 0.1});
  EXPECT_FALSE(report.Passed(1e-4));
  for (const auto& c : report.classes) {
    if (c.name == "W_v") {
      EXPECT_GT(c.relative_error, 1e-4);
    } else {
      EXPECT_LE(c.relative_error, 1e-4) << c.name;
    }
  }
}

}  // namespace
}  // namespace rncrf

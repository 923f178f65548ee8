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

#include "rncrf/features.h"

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rncrf/corpus.h"
#include "rncrf/errors.h"

namespace rncrf {
namespace {

using enum BioLabel;

Sentence Tokens(const std::vector<std::string>& words,
                const std::vector<BioLabel>& labels,
                const std::vector<std::string>& tags = {}) {
  Sentence s;
  for (size_t i = 0; i < words.size(); ++i) {
    Token t;
    t.surface = words[i];
    t.pos = tags.empty() ? "NOUN" : tags[i];
    t.head = i == 0 ? 0 : 1;
    t.relation = i == 0 ? "root" : "dep";
    t.label = labels[i];
    s.tokens.push_back(t);
  }
  return s;
}

TEST(NameListsTest, FrequentTermsAndWords) {
  Corpus corpus;
  for (int i = 0; i < 3; ++i) {
    corpus.sentences.push_back(Tokens({"the", "delivery", "times", "were", "slow"},
                                      {kO, kBA, kIA, kO, kBO}));
  }
  corpus.sentences.push_back(Tokens({"pizza"}, {kBA}));
  NameLists lists = ExtractNameLists(corpus, 2, 0.9);
  EXPECT_TRUE(lists.terms.contains("delivery times"));
  EXPECT_FALSE(lists.terms.contains("pizza"));
  EXPECT_TRUE(lists.words.contains("delivery"));
  EXPECT_TRUE(lists.words.contains("times"));
  EXPECT_FALSE(lists.words.contains("the"));

  lists = ExtractNameLists(corpus, 100, 0.9);
  EXPECT_TRUE(lists.terms.empty());
}

TEST(NameListsTest, WordAlwaysInsideAspects) {
  Corpus corpus;
  for (int i = 0; i < 4; ++i) {
    corpus.sentences.push_back(Tokens({"sushi", "rocks"}, {kBA, kBO}));
  }
  corpus.sentences.push_back(Tokens({"rocks"}, {kO}));
  const NameLists lists = ExtractNameLists(corpus, 2, 0.9);
  EXPECT_TRUE(lists.words.contains("sushi"));
  EXPECT_FALSE(lists.words.contains("rocks"));
}

TEST(NameListsTest, RoundTripsThroughText) {
  NameLists lists;
  lists.terms = {"wine list", "food"};
  lists.words = {"food", "wine"};
  std::stringstream io;
  WriteNameLists(io, lists);
  const NameLists back = ReadNameLists(io);
  EXPECT_EQ(back.terms, lists.terms);
  EXPECT_EQ(back.words, lists.words);
}

TEST(FeaturizeTest, LexiconOnly) {
  SentimentLexicon lexicon;
  std::istringstream in("; comment\nfastest\ngreat\n");
  lexicon = ReadLexicon(in);
  FeatureConfig config;
  config.lexicon = true;
  const Eigen::MatrixXd f =
      Featurize(Tokens({"fastest", "delivery"}, {kBO, kBA}), {}, lexicon, config);
  ASSERT_EQ(f.rows(), 1);
  EXPECT_EQ(f(0, 0), 1.0);
  EXPECT_EQ(f(0, 1), 0.0);
}

TEST(FeaturizeTest, DisabledFeaturesAreEmpty) {
  const Eigen::MatrixXd f =
      Featurize(Tokens({"a", "b"}, {kO, kO}), {}, {}, FeatureConfig{});
  EXPECT_EQ(f.rows(), 0);
  EXPECT_EQ(f.cols(), 2);
}

TEST(FeaturizeTest, PosOneHot) {
  FeatureConfig config;
  config.pos = true;
  const Eigen::MatrixXd f =
      Featurize(Tokens({"tasty"}, {kBO}, {"ADJ"}), {}, {}, config);
  ASSERT_EQ(f.rows(), 15);
  EXPECT_EQ(f.col(0).sum(), 1.0);
  EXPECT_EQ(f(UniversalTagSlot("ADJ"), 0), 1.0);
  EXPECT_EQ(UniversalTagSlot("ADJ"), 0);
  // Penn tags map into the same slots.
  EXPECT_EQ(UniversalTagSlot("JJ"), UniversalTagSlot("ADJ"));
  EXPECT_EQ(UniversalTagSlot("NNS"), UniversalTagSlot("NOUN"));
}

TEST(FeaturizeTest, NameListColumns) {
  NameLists lists;
  lists.terms = {"delivery times"};
  lists.words = {"pizza"};
  FeatureConfig config;
  config.namelist = true;
  const Eigen::MatrixXd f = Featurize(
      Tokens({"delivery", "times", "pizza", "delivery"}, {kO, kO, kO, kO}),
      lists, {}, config);
  ASSERT_EQ(f.rows(), 2);
  // Row 0: inside a listed term; row 1: listed word.
  EXPECT_EQ(f(0, 0), 1.0);
  EXPECT_EQ(f(0, 1), 1.0);
  EXPECT_EQ(f(0, 2), 0.0);
  EXPECT_EQ(f(0, 3), 0.0);
  EXPECT_EQ(f(1, 2), 1.0);
  EXPECT_EQ(f(1, 0), 0.0);
}

TEST(AugmentTest, StacksHiddenAboveFeatures) {
  const Eigen::MatrixXd h = Eigen::MatrixXd::Random(3, 4);
  const Eigen::MatrixXd f = Eigen::MatrixXd::Ones(2, 4);
  const Eigen::MatrixXd x = Augment(h, f);
  ASSERT_EQ(x.rows(), 5);
  EXPECT_EQ(x.topRows(3), h);
  EXPECT_EQ(HiddenRows(x, 3), h);
  EXPECT_EQ(Augment(h, Eigen::MatrixXd(0, 4)), h);
}

TEST(FeatureListTest, ParsesAndRejects) {
  const FeatureConfig c = ParseFeatureList("pos, lexicon");
  EXPECT_TRUE(c.pos);
  EXPECT_FALSE(c.namelist);
  EXPECT_TRUE(c.lexicon);
  EXPECT_EQ(c.dim(), 16);
  EXPECT_EQ(ParseFeatureList("none").dim(), 0);
  EXPECT_EQ(ParseFeatureList("").dim(), 0);
  EXPECT_THROW(ParseFeatureList("pos,chunk"), UsageError);
  EXPECT_EQ(ParseFeatureList(FeatureListString(c)).dim(), 16);
}

}  // namespace
}  // namespace rncrf

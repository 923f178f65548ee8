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

#include "rncrf/corpus.h"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "rncrf/errors.h"
#include "rncrf/random.h"

namespace rncrf {
namespace {

using enum BioLabel;

constexpr char kLikeTheFood[] =
    "1\tI\tPRON\t2\tnsubj\tO\n"
    "2\tlike\tVERB\t0\troot\tO\n"
    "3\tthe\tDET\t4\tdet\tO\n"
    "4\tfood\tNOUN\t2\tdobj\tBA\n";

Corpus Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseConll(in, "test.conll");
}

TEST(ParseConllTest, ReadsLikeTheFood) {
  const Corpus corpus = Parse(kLikeTheFood);
  ASSERT_EQ(corpus.sentences.size(), 1u);
  const Sentence& s = corpus.sentences[0];
  ASSERT_EQ(s.size(), 4);
  EXPECT_EQ(s.tokens[1].surface, "like");
  EXPECT_EQ(s.tokens[1].head, 0);
  EXPECT_EQ(s.tokens[3].relation, "dobj");
  const std::vector<Span> spans = DecodeLabels(s.labels());
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0], (Span{4, 4, Category::kAspect}));
  EXPECT_EQ(corpus.mode, LabelMode::kAspectOnly);
}

TEST(ParseConllTest, EmptyStream) {
  const Corpus corpus = Parse("");
  EXPECT_TRUE(corpus.sentences.empty());
}

TEST(ParseConllTest, HeadOutOfRangeCitesLine) {
  const std::string text =
      "1\tI\tPRON\t2\tnsubj\tO\n"
      "2\tlike\tVERB\t0\troot\tO\n"
      "3\tthe\tDET\t9\tdet\tO\n"
      "4\tfood\tNOUN\t2\tdobj\tBA\n";
  try {
    Parse(text);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("test.conll:3:"), std::string::npos)
        << e.what();
  }
}

TEST(ParseConllTest, RejectsUnknownLabelAndBadIndex) {
  EXPECT_THROW(Parse("1\tx\tX\t0\troot\tB-ASP\n"), DataError);
  EXPECT_THROW(Parse("2\tx\tX\t0\troot\tO\n"), DataError);
  EXPECT_THROW(Parse("1\tx\tX\tzero\troot\tO\n"), DataError);
}

TEST(ParseConllTest, RootRepair) {
  // Two roots: the second is re-headed to the first.
  Corpus corpus = Parse("1\ta\tX\t0\troot\tO\n2\tb\tX\t0\troot\tO\n");
  EXPECT_EQ(corpus.sentences[0].tokens[0].head, 0);
  EXPECT_EQ(corpus.sentences[0].tokens[1].head, 1);
  // A 2-cycle has no root; the first token becomes it.
  corpus = Parse("1\ta\tX\t2\tdep\tO\n2\tb\tX\t1\tdep\tO\n");
  EXPECT_EQ(corpus.sentences[0].tokens[0].head, 0);
  EXPECT_EQ(corpus.sentences[0].tokens[1].head, 1);
}

TEST(ParseConllTest, SentenceIdsAndModes) {
  const Corpus corpus = Parse(
      "# sent_id = r-17\n1\tgreat\tADJ\t0\troot\tBO\n\n"
      "1\tok\tADJ\t0\troot\tO\n");
  ASSERT_EQ(corpus.sentences.size(), 2u);
  EXPECT_EQ(corpus.sentences[0].id, "r-17");
  EXPECT_EQ(corpus.sentences[1].id, "s2");
  EXPECT_EQ(corpus.mode, LabelMode::kFull);
}

TEST(ParseConllTest, WhitespaceSeparatedLines) {
  const Corpus corpus = Parse("1 food NOUN 0 root BA\n");
  ASSERT_EQ(corpus.sentences.size(), 1u);
  EXPECT_EQ(corpus.sentences[0].tokens[0].label, kBA);
}

TEST(WriteConllTest, ReplacesOnlyLabelColumn) {
  const Corpus corpus = Parse(kLikeTheFood);
  std::ostringstream out;
  const std::vector<BioLabel> labels = {kO, kBO, kO, kBA};
  WriteSentence(out, corpus.sentences[0], labels);
  EXPECT_EQ(out.str(),
            "1\tI\tPRON\t2\tnsubj\tO\n"
            "2\tlike\tVERB\t0\troot\tBO\n"
            "3\tthe\tDET\t4\tdet\tO\n"
            "4\tfood\tNOUN\t2\tdobj\tBA\n\n");
  // Round trip.
  const Corpus again = Parse(out.str());
  EXPECT_EQ(again.sentences[0].labels(), labels);
}

TEST(VocabularyTest, MinCountCutoff) {
  const Corpus corpus = Parse(
      "1\ta\tX\t0\troot\tO\n2\ta\tX\t1\tdep\tO\n3\ta\tX\t1\tdep\tO\n"
      "4\tb\tX\t1\tdep\tO\n");
  const Vocabulary v2 = BuildVocab(corpus, 2);
  EXPECT_EQ(v2.size(), 2);
  EXPECT_TRUE(v2.Contains("a"));
  EXPECT_FALSE(v2.Contains("b"));
  EXPECT_EQ(v2.Lookup("b"), Vocabulary::kUnk);
  const Vocabulary v1 = BuildVocab(corpus, 1);
  EXPECT_EQ(v1.size(), 3);
  EXPECT_TRUE(v1.Contains("b"));
}

TEST(VocabularyTest, CaseFolding) {
  const Corpus corpus =
      Parse("1\tFood\tNOUN\t0\troot\tBA\n2\tfood\tNOUN\t1\tdep\tBA\n");
  const Vocabulary v = BuildVocab(corpus, 1);
  EXPECT_EQ(v.size(), 2);
  EXPECT_EQ(v.Lookup("FOOD"), v.Lookup("food"));
}

TEST(EmbeddingsTest, CopiesVectorsVerbatim) {
  Vocabulary vocab;
  const int food = vocab.Add("food");
  std::istringstream in("food 0.1 0.2\n");
  const EmbeddingMatrix e = LoadEmbeddings(in, vocab, 2, 1);
  EXPECT_EQ(e(0, food), 0.1);
  EXPECT_EQ(e(1, food), 0.2);
}

TEST(EmbeddingsTest, MissingWordsUseBoundedUniform) {
  Vocabulary vocab;
  vocab.Add("food");
  vocab.Add("service");
  std::istringstream in("");
  const EmbeddingMatrix e = LoadEmbeddings(in, vocab, 300, 4);
  EXPECT_NEAR(UniformInitBound(300), 0.09992, 5e-6);
  EXPECT_LE(e.cwiseAbs().maxCoeff(), UniformInitBound(300));
  EXPECT_GT(e.cwiseAbs().maxCoeff(), 0.0);
}

TEST(EmbeddingsTest, DeterministicForSeed) {
  Vocabulary vocab;
  vocab.Add("x");
  std::istringstream a("x 1 2 3\n"), b("x 1 2 3\n");
  const EmbeddingMatrix ea = LoadEmbeddings(a, vocab, 3, 9);
  const EmbeddingMatrix eb = LoadEmbeddings(b, vocab, 3, 9);
  EXPECT_EQ(ea, eb);
}

TEST(EmbeddingsTest, RejectsBadRows) {
  Vocabulary vocab;
  vocab.Add("food");
  std::istringstream short_row("food 0.1\n");
  EXPECT_THROW(LoadEmbeddings(short_row, vocab, 2, 1), DataError);
  std::istringstream junk("food 0.1 zz\n");
  EXPECT_THROW(LoadEmbeddings(junk, vocab, 2, 1), DataError);
}

TEST(EncodeLabelsTest, SchemeExamples) {
  const Span aspect[] = {{3, 4, Category::kAspect}};
  EXPECT_EQ(EncodeLabels(aspect, 5, LabelMode::kFull),
            (std::vector<BioLabel>{kO, kO, kBA, kIA, kO}));
  const Span opinion[] = {{1, 1, Category::kOpinion}};
  EXPECT_EQ(EncodeLabels(opinion, 3, LabelMode::kFull),
            (std::vector<BioLabel>{kBO, kO, kO}));
  EXPECT_EQ(EncodeLabels(opinion, 3, LabelMode::kAspectOnly),
            (std::vector<BioLabel>{kO, kO, kO}));
}

TEST(EncodeLabelsTest, RejectsOverlapAndBounds) {
  const Span overlap[] = {{1, 2, Category::kAspect}, {2, 3, Category::kOpinion}};
  EXPECT_THROW(EncodeLabels(overlap, 4, LabelMode::kFull), DataError);
  const Span outside[] = {{3, 5, Category::kAspect}};
  EXPECT_THROW(EncodeLabels(outside, 4, LabelMode::kFull), DataError);
}

TEST(DecodeLabelsTest, Examples) {
  const BioLabel a[] = {kBA, kIA, kO, kBO};
  EXPECT_EQ(DecodeLabels(a), (std::vector<Span>{{1, 2, Category::kAspect},
                                                {4, 4, Category::kOpinion}}));
  const BioLabel orphan[] = {kO, kIA, kO};
  EXPECT_EQ(DecodeLabels(orphan),
            (std::vector<Span>{{2, 2, Category::kAspect}}));
  const BioLabel none[] = {kO, kO};
  EXPECT_TRUE(DecodeLabels(none).empty());
  // A category switch inside a chunk starts a new span.
  const BioLabel mixed[] = {kBA, kIO};
  EXPECT_EQ(DecodeLabels(mixed), (std::vector<Span>{{1, 1, Category::kAspect},
                                                    {2, 2, Category::kOpinion}}));
}

TEST(LabelModeTest, AspectOnlyIndices) {
  EXPECT_EQ(LabelCount(LabelMode::kAspectOnly), 3);
  EXPECT_EQ(LabelIndex(kBA, LabelMode::kAspectOnly), 0);
  EXPECT_EQ(LabelIndex(kIA, LabelMode::kAspectOnly), 1);
  EXPECT_EQ(LabelIndex(kO, LabelMode::kAspectOnly), 2);
  EXPECT_EQ(LabelIndex(kBO, LabelMode::kAspectOnly), 2);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(LabelIndex(LabelAt(i, LabelMode::kFull), LabelMode::kFull), i);
  }
}

TEST(CorpusStatsTest, CountsSpans) {
  EXPECT_EQ(ComputeCorpusStats(Corpus{}).sentences, 0);
  EXPECT_EQ(ComputeCorpusStats(Corpus{}).tokens, 0);
  const Corpus corpus = Parse(
      "1\tgreat\tADJ\t2\tamod\tBO\n2\tpizza\tNOUN\t0\troot\tBA\n"
      "3\tcrust\tNOUN\t2\tdep\tIA\n");
  const CorpusStats stats = ComputeCorpusStats(corpus);
  EXPECT_EQ(stats.sentences, 1);
  EXPECT_EQ(stats.tokens, 3);
  EXPECT_EQ(stats.aspect_spans, 1);
  EXPECT_EQ(stats.opinion_spans, 1);
}

}  // namespace
}  // namespace rncrf

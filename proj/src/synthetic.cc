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

#include "rncrf/synthetic.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "rncrf/features.h"

namespace rncrf {

namespace {

struct Word {
  std::string surface;
  std::string pos;
  int head;
  const char* relation;
  BioLabel label;
};

template <typename T>
const T& Pick(const std::vector<T>& items, Rng& rng) {
  std::uniform_int_distribution<size_t> dist(0, items.size() - 1);
  return items[dist(rng)];
}

Sentence Build(const std::vector<Word>& words, int ordinal) {
  Sentence s;
  s.id = "synthetic-" + std::to_string(ordinal);
  for (const Word& w : words) {
    Token t;
    t.surface = w.surface;
    t.pos = w.pos;
    t.head = w.head;
    t.relation = w.relation;
    t.label = w.label;
    s.tokens.push_back(std::move(t));
  }
  return s;
}

}  // namespace

Corpus SyntheticReviewCorpus(int sentences, uint64_t seed) {
  using enum BioLabel;
  static const std::vector<std::string> kAspects = {
      "food", "pizza", "service", "staff", "sushi", "pasta", "decor", "wine"};
  static const std::vector<std::pair<std::string, std::string>> kCompounds = {
      {"pizza", "crust"}, {"wine", "list"}, {"delivery", "times"},
      {"sushi", "rolls"}};
  static const std::vector<std::string> kLikeVerbs = {"love", "like", "adore"};
  static const std::vector<std::string> kPleaseVerbs = {"pleased", "impressed",
                                                        "delighted"};
  static const std::vector<std::string> kHateVerbs = {"hated", "disliked"};
  static const std::vector<std::string> kIntensifiers = {"really", "truly"};
  static const std::vector<std::string> kNeutralVerbs = {"ate", "sat",
                                                         "waited"};
  static const std::vector<std::string> kPlaces = {"there", "outside"};

  Rng rng(seed);
  Corpus corpus;
  corpus.mode = LabelMode::kFull;
  for (int i = 0; i < sentences; ++i) {
    std::vector<Word> w;
    switch (i % 5) {
      case 0:  // I love the X
        w = {{"I", "PRON", 2, "nsubj", kO},
             {Pick(kLikeVerbs, rng), "VERB", 0, "root", kBO},
             {"the", "DET", 4, "mod", kO},
             {Pick(kAspects, rng), "NOUN", 2, "dobj", kBA}};
        break;
      case 1:  // the X pleased us
        w = {{"the", "DET", 2, "mod", kO},
             {Pick(kAspects, rng), "NOUN", 3, "nsubj", kBA},
             {Pick(kPleaseVerbs, rng), "VERB", 0, "root", kBO},
             {"us", "PRON", 3, "dobj", kO}};
        break;
      case 2: {  // we hated the X Y
        const auto& [first, second] = Pick(kCompounds, rng);
        w = {{"we", "PRON", 2, "nsubj", kO},
             {Pick(kHateVerbs, rng), "VERB", 0, "root", kBO},
             {"the", "DET", 5, "mod", kO},
             {first, "NOUN", 5, "mod", kBA},
             {second, "NOUN", 2, "dobj", kIA}};
        break;
      }
      case 3:  // they really enjoy the X
        w = {{"they", "PRON", 3, "nsubj", kO},
             {Pick(kIntensifiers, rng), "ADV", 3, "mod", kBO},
             {Pick(kLikeVerbs, rng), "VERB", 0, "root", kIO},
             {"the", "DET", 5, "mod", kO},
             {Pick(kAspects, rng), "NOUN", 3, "dobj", kBA}};
        break;
      default:  // we ate there
        w = {{"we", "PRON", 2, "nsubj", kO},
             {Pick(kNeutralVerbs, rng), "VERB", 0, "root", kO},
             {Pick(kPlaces, rng), "ADV", 2, "mod", kO}};
        break;
    }
    corpus.sentences.push_back(Build(w, i + 1));
  }
  return corpus;
}

Sentence RandomSentence(int n, int relations, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Sentence s;
  s.id = "random";
  s.tokens.resize(n);
  std::uniform_int_distribution<int> word(0, 2 * n);
  std::uniform_int_distribution<int> rel(0, std::max(relations, 1) - 1);
  std::uniform_int_distribution<int> tag(0, kUniversalTags.size() - 1);
  std::uniform_int_distribution<int> label(0, 4);
  for (int i = 0; i < n; ++i) {
    Token& t = s.tokens[order[i]];
    t.surface = "w" + std::to_string(word(rng));
    t.pos = std::string(kUniversalTags[tag(rng)]);
    t.label = LabelAt(label(rng), LabelMode::kFull);
    if (i == 0) {
      t.head = 0;
      t.relation = "root";
    } else {
      std::uniform_int_distribution<int> parent(0, i - 1);
      t.head = order[parent(rng)] + 1;
      t.relation = "rel" + std::to_string(rel(rng));
    }
  }
  return s;
}

}  // namespace rncrf

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

// Fixed binary token features appended below the hidden vectors fed to the
// CRF: a 15-way universal POS one-hot, membership in two aspect name lists,
// and membership in an opinion lexicon.

#ifndef RNCRF_FEATURES_H_
#define RNCRF_FEATURES_H_

#include <array>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "rncrf/corpus.h"

namespace rncrf {

// Slot order of the POS one-hot block.
inline constexpr std::array<std::string_view, 15> kUniversalTags = {
    "ADJ",  "ADP",  "ADV",  "AUX",   "CONJ", "DET",  "INTJ", "NOUN",
    "NUM",  "PART", "PRON", "PROPN", "PUNCT", "VERB", "X"};

// Slot of a tag in kUniversalTags. Accepts the table's tags, the Universal
// Dependencies and Petrov et al. variants (CCONJ, SCONJ, SYM, PRT, "."), and
// Penn Treebank tags. Anything else maps to NOUN and logs a warning.
int UniversalTagSlot(std::string_view tag);

struct NameLists {
  std::set<std::string> terms;  // frequent aspect terms, space-joined
  std::set<std::string> words;  // words usually labeled as aspect
};

// Terms: lowercased aspect spans occurring at least `min_term_freq` times.
// Words: lowercased tokens seen at least twice whose fraction of BA/IA
// labels is at least `min_word_prob`. Throws DataError if the corpus has no
// aspect labels.
NameLists ExtractNameLists(const Corpus& corpus, int min_term_freq,
                           double min_word_prob);

void WriteNameLists(std::ostream& out, const NameLists& lists);
NameLists ReadNameLists(std::istream& in);

struct SentimentLexicon {
  std::set<std::string> words;
};

// One word per line, '#' comments.
SentimentLexicon ReadLexicon(std::istream& in);

struct FeatureConfig {
  bool pos = false;
  bool namelist = false;
  bool lexicon = false;
  int min_term_freq = 2;
  double min_word_prob = 0.7;

  int dim() const { return 15 * pos + 2 * namelist + 1 * lexicon; }
  bool any() const { return pos || namelist || lexicon; }
};

// Parses "pos,namelist,lexicon" (any subset, "none" or empty for no
// features). Throws UsageError on unknown names.
FeatureConfig ParseFeatureList(std::string_view list);
std::string FeatureListString(const FeatureConfig& config);

// dim() x n matrix of 0/1 features, blocks in the order pos, namelist,
// lexicon.
Eigen::MatrixXd Featurize(const Sentence& sentence, const NameLists& lists,
                          const SentimentLexicon& lexicon,
                          const FeatureConfig& config);

// Stacks `features` below `hidden` column by column.
Eigen::MatrixXd Augment(const Eigen::MatrixXd& hidden,
                        const Eigen::MatrixXd& features);

// The rows of an input gradient that belong to the hidden vectors. Feature
// rows are fixed and their gradient is dropped.
Eigen::MatrixXd HiddenRows(const Eigen::MatrixXd& d_inputs, int hidden_dim);

}  // namespace rncrf

#endif  // RNCRF_FEATURES_H_

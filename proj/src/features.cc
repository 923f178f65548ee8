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

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <glog/logging.h>

#include "rncrf/errors.h"

namespace rncrf {

namespace {

const std::unordered_map<std::string, std::string_view>& TagAdapter() {
  static const auto* table = new std::unordered_map<std::string,
                                                    std::string_view>{
      // Universal Dependencies / Petrov et al. variants.
      {"CCONJ", "CONJ"}, {"SCONJ", "CONJ"}, {"SYM", "X"},
      {"PRT", "PART"}, {".", "PUNCT"},
      // Penn Treebank.
      {"NN", "NOUN"}, {"NNS", "NOUN"}, {"NNP", "PROPN"}, {"NNPS", "PROPN"},
      {"VB", "VERB"}, {"VBD", "VERB"}, {"VBG", "VERB"}, {"VBN", "VERB"},
      {"VBP", "VERB"}, {"VBZ", "VERB"}, {"MD", "AUX"},
      {"JJ", "ADJ"}, {"JJR", "ADJ"}, {"JJS", "ADJ"},
      {"RB", "ADV"}, {"RBR", "ADV"}, {"RBS", "ADV"}, {"WRB", "ADV"},
      {"PRP", "PRON"}, {"PRP$", "PRON"}, {"WP", "PRON"}, {"WP$", "PRON"},
      {"EX", "PRON"}, {"DT", "DET"}, {"PDT", "DET"}, {"WDT", "DET"},
      {"IN", "ADP"}, {"TO", "PART"}, {"RP", "PART"}, {"POS", "PART"},
      {"CC", "CONJ"}, {"CD", "NUM"}, {"UH", "INTJ"}, {"FW", "X"},
      {"LS", "X"}, {",", "PUNCT"}, {":", "PUNCT"}, {"``", "PUNCT"},
      {"''", "PUNCT"}, {"-LRB-", "PUNCT"}, {"-RRB-", "PUNCT"},
      {"HYPH", "PUNCT"}, {"NFP", "PUNCT"}, {"#", "PUNCT"}, {"$", "PUNCT"},
  };
  return *table;
}

int SlotOf(std::string_view universal) {
  auto it = std::find(kUniversalTags.begin(), kUniversalTags.end(), universal);
  return it == kUniversalTags.end()
             ? -1
             : static_cast<int>(it - kUniversalTags.begin());
}

void WarnUnknownTag(const std::string& tag) {
  static std::mutex mu;
  static auto* warned = new std::set<std::string>;
  std::lock_guard<std::mutex> lock(mu);
  if (warned->insert(tag).second) {
    LOG(WARNING) << "unknown POS tag '" << tag << "' mapped to NOUN";
  }
}

std::string JoinLower(const Sentence& s, int begin, int end) {
  std::string out;
  for (int i = begin; i < end; ++i) {
    if (i > begin) out += ' ';
    out += Lowercase(s.tokens[i].surface);
  }
  return out;
}

std::string Trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

int UniversalTagSlot(std::string_view tag) {
  std::string upper(tag);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (int slot = SlotOf(upper); slot >= 0) return slot;
  const auto& adapter = TagAdapter();
  if (auto it = adapter.find(upper); it != adapter.end()) {
    return SlotOf(it->second);
  }
  WarnUnknownTag(upper);
  return SlotOf("NOUN");
}

NameLists ExtractNameLists(const Corpus& corpus, int min_term_freq,
                           double min_word_prob) {
  std::map<std::string, int> term_counts;
  std::map<std::string, std::pair<int, int>> word_counts;  // (aspect, total)
  bool any_aspect = false;
  for (const Sentence& s : corpus.sentences) {
    for (const Span& span : DecodeLabels(s.labels())) {
      if (span.category != Category::kAspect) continue;
      any_aspect = true;
      ++term_counts[JoinLower(s, span.start - 1, span.end)];
    }
    for (const Token& t : s.tokens) {
      auto& [aspect, total] = word_counts[Lowercase(t.surface)];
      ++total;
      if (t.label == BioLabel::kBA || t.label == BioLabel::kIA) ++aspect;
    }
  }
  if (!any_aspect) {
    throw DataError("name lists need a corpus with aspect labels");
  }
  NameLists lists;
  for (const auto& [term, count] : term_counts) {
    if (count >= min_term_freq) lists.terms.insert(term);
  }
  for (const auto& [word, counts] : word_counts) {
    const auto [aspect, total] = counts;
    if (total >= 2 &&
        static_cast<double>(aspect) / total >= min_word_prob) {
      lists.words.insert(word);
    }
  }
  return lists;
}

void WriteNameLists(std::ostream& out, const NameLists& lists) {
  out << "[A]\n";
  for (const std::string& t : lists.terms) out << t << '\n';
  out << "[B]\n";
  for (const std::string& w : lists.words) out << w << '\n';
}

NameLists ReadNameLists(std::istream& in) {
  NameLists lists;
  std::set<std::string>* section = nullptr;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line == "[A]") {
      section = &lists.terms;
    } else if (line == "[B]") {
      section = &lists.words;
    } else if (section == nullptr) {
      throw DataError("name lists:" + std::to_string(line_number) +
                      ": entry before [A]/[B] header");
    } else {
      section->insert(Lowercase(line));
    }
  }
  return lists;
}

SentimentLexicon ReadLexicon(std::istream& in) {
  SentimentLexicon lexicon;
  std::string line;
  while (std::getline(in, line)) {
    line = Trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    lexicon.words.insert(Lowercase(line));
  }
  return lexicon;
}

FeatureConfig ParseFeatureList(std::string_view list) {
  FeatureConfig config;
  std::stringstream ss{std::string(list)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (item.empty() || item == "none") continue;
    if (item == "pos") {
      config.pos = true;
    } else if (item == "namelist") {
      config.namelist = true;
    } else if (item == "lexicon") {
      config.lexicon = true;
    } else {
      throw UsageError("unknown feature '" + item +
                       "' (expected pos, namelist, lexicon)");
    }
  }
  return config;
}

std::string FeatureListString(const FeatureConfig& config) {
  std::string out;
  auto add = [&out](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(config.pos, "pos");
  add(config.namelist, "namelist");
  add(config.lexicon, "lexicon");
  return out.empty() ? "none" : out;
}

Eigen::MatrixXd Featurize(const Sentence& sentence, const NameLists& lists,
                          const SentimentLexicon& lexicon,
                          const FeatureConfig& config) {
  const int n = sentence.size();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(config.dim(), n);
  int row = 0;
  if (config.pos) {
    for (int i = 0; i < n; ++i) {
      f(row + UniversalTagSlot(sentence.tokens[i].pos), i) = 1.0;
    }
    row += 15;
  }
  if (config.namelist) {
    int longest = 0;
    for (const std::string& term : lists.terms) {
      longest = std::max<int>(
          longest, 1 + static_cast<int>(std::count(term.begin(), term.end(), ' ')));
    }
    // Greedy longest match of full terms, left to right.
    for (int i = 0; i < n;) {
      int matched = 0;
      for (int len = std::min(longest, n - i); len >= 1; --len) {
        if (lists.terms.contains(JoinLower(sentence, i, i + len))) {
          matched = len;
          break;
        }
      }
      for (int j = i; j < i + matched; ++j) f(row, j) = 1.0;
      i += std::max(matched, 1);
    }
    for (int i = 0; i < n; ++i) {
      if (lists.words.contains(Lowercase(sentence.tokens[i].surface))) {
        f(row + 1, i) = 1.0;
      }
    }
    row += 2;
  }
  if (config.lexicon) {
    for (int i = 0; i < n; ++i) {
      if (lexicon.words.contains(Lowercase(sentence.tokens[i].surface))) {
        f(row, i) = 1.0;
      }
    }
  }
  return f;
}

Eigen::MatrixXd Augment(const Eigen::MatrixXd& hidden,
                        const Eigen::MatrixXd& features) {
  if (features.rows() == 0) return hidden;
  Eigen::MatrixXd out(hidden.rows() + features.rows(), hidden.cols());
  out << hidden, features;
  return out;
}

Eigen::MatrixXd HiddenRows(const Eigen::MatrixXd& d_inputs, int hidden_dim) {
  return d_inputs.topRows(hidden_dim);
}

}  // namespace rncrf

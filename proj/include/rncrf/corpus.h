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

// Annotated review corpora: tokens with dependency annotations and BIO
// labels, vocabularies, pretrained embeddings, and span <-> label conversion.
//
// Corpus files hold one token per line with six tab-separated columns
//
//   INDEX  SURFACE  POS  HEAD  RELATION  LABEL
//
// where INDEX and HEAD are 1-based (HEAD 0 marks the syntactic root) and
// LABEL is one of BA, IA, BO, IO, O (or "_" for unlabeled input). Sentences
// are separated by a blank line; lines starting with '#' are comments.

#ifndef RNCRF_CORPUS_H_
#define RNCRF_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace rncrf {

enum class BioLabel : uint8_t { kBA, kIA, kBO, kIO, kO };

// kFull tags aspects and opinions with {BA, IA, BO, IO, O}; kAspectOnly
// drops opinion annotations and uses {BA, IA, O}.
enum class LabelMode : uint8_t { kFull, kAspectOnly };

enum class Category : uint8_t { kAspect, kOpinion };

std::string_view LabelName(BioLabel label);
std::optional<BioLabel> ParseLabel(std::string_view name);

// Dense label indices used by the models. kFull: BA=0 IA=1 BO=2 IO=3 O=4.
// kAspectOnly: BA=0 IA=1 O=2, with BO/IO folded into O.
int LabelCount(LabelMode mode);
int LabelIndex(BioLabel label, LabelMode mode);
BioLabel LabelAt(int index, LabelMode mode);
std::vector<std::string> LabelNames(LabelMode mode);
std::optional<LabelMode> LabelModeFromNames(std::span<const std::string> names);

// BIO labels of a token after projecting onto `mode`.
BioLabel ProjectLabel(BioLabel label, LabelMode mode);

struct Token {
  std::string surface;
  std::string pos;
  int head = 0;  // 1-based, 0 = root
  std::string relation;
  BioLabel label = BioLabel::kO;
  // Raw input line, kept so that tagged output can reproduce it verbatim.
  std::string line;
};

struct Sentence {
  std::string id;
  std::vector<std::string> comments;
  std::vector<Token> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  std::vector<BioLabel> labels() const;
};

// Inclusive, 1-based token range.
struct Span {
  int start = 1;
  int end = 1;
  Category category = Category::kAspect;

  auto operator<=>(const Span&) const = default;
};

struct Corpus {
  std::vector<Sentence> sentences;
  LabelMode mode = LabelMode::kFull;
};

// Parses the column format. Applies root repair: if a sentence has no or
// several head-0 tokens, the first such token (or token 1 when there is
// none) becomes the unique root and the other head-0 tokens attach to it.
// The label mode is kAspectOnly if labels occur but none is an opinion
// label, kFull otherwise.
// Throws DataError with `source:line` on malformed input.
Corpus ParseConll(std::istream& in, std::string_view source = "<input>");
Corpus ReadConllFile(const std::string& path);

// Writes a sentence in the column format using `labels` for the last column.
// Tokens that came from a parsed line keep that line except for the label.
void WriteSentence(std::ostream& out, const Sentence& sentence,
                   std::span<const BioLabel> labels);
void WriteConll(std::ostream& out, const Corpus& corpus);

// Lowercased word list with a reserved unknown-word entry at index 0.
class Vocabulary {
 public:
  static constexpr int kUnk = 0;
  static constexpr std::string_view kUnkWord = "<unk>";

  Vocabulary();

  // Adds a word (lowercased) if absent and returns its index.
  int Add(std::string_view word);
  // Index of the lowercased word, kUnk if absent.
  int Lookup(std::string_view word) const;
  bool Contains(std::string_view word) const;

  int size() const { return static_cast<int>(words_.size()); }
  const std::string& word(int index) const { return words_[index]; }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
};

std::string Lowercase(std::string_view s);

// Words occurring at least `min_count` times (after lowercasing), in
// lexicographic order after <unk>.
Vocabulary BuildVocab(const Corpus& corpus, int min_count);

// d x v matrix, column j is the vector of vocabulary word j.
using EmbeddingMatrix = Eigen::MatrixXd;

// Reads `word f1 ... fd` lines (optionally preceded by a `V d` header).
// Vocabulary words found in the file are copied verbatim; the others,
// including <unk>, are drawn from U(-b, b) with b = sqrt(6)/sqrt(2d+1).
EmbeddingMatrix LoadEmbeddings(std::istream& in, const Vocabulary& vocab,
                               int d, uint64_t seed);
// Same as LoadEmbeddings with an empty file.
EmbeddingMatrix RandomEmbeddings(const Vocabulary& vocab, int d,
                                 uint64_t seed);

// BIO-encodes spans. In kAspectOnly mode opinion spans become O.
std::vector<BioLabel> EncodeLabels(std::span<const Span> spans, int n,
                                   LabelMode mode);

// Maximal B-I runs become spans; an I tag without a same-category
// predecessor starts a new span.
std::vector<Span> DecodeLabels(std::span<const BioLabel> labels);

struct CorpusStats {
  int sentences = 0;
  int tokens = 0;
  int aspect_spans = 0;
  int opinion_spans = 0;
  LabelMode mode = LabelMode::kFull;
};

CorpusStats ComputeCorpusStats(const Corpus& corpus);

}  // namespace rncrf

#endif  // RNCRF_CORPUS_H_

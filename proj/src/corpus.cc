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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "rncrf/errors.h"
#include "rncrf/random.h"

namespace rncrf {

namespace {

constexpr BioLabel kFullLabels[] = {BioLabel::kBA, BioLabel::kIA,
                                    BioLabel::kBO, BioLabel::kIO,
                                    BioLabel::kO};
constexpr BioLabel kAspectLabels[] = {BioLabel::kBA, BioLabel::kIA,
                                      BioLabel::kO};

std::vector<std::string> SplitColumns(const std::string& line) {
  std::vector<std::string> columns;
  if (line.find('\t') != std::string::npos) {
    size_t begin = 0;
    while (true) {
      size_t end = line.find('\t', begin);
      columns.push_back(line.substr(begin, end - begin));
      if (end == std::string::npos) break;
      begin = end + 1;
    }
  } else {
    std::istringstream ss(line);
    std::string col;
    while (ss >> col) columns.push_back(col);
  }
  return columns;
}

std::optional<int> ParseInt(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string Where(std::string_view source, int line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

std::string TrimRight(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

struct PendingSentence {
  Sentence sentence;
  std::vector<int> line_numbers;
};

// Validates heads and applies root repair.
void FinishSentence(PendingSentence& pending, std::string_view source,
                    int ordinal, std::vector<Sentence>& out) {
  Sentence& s = pending.sentence;
  const int n = s.size();
  for (int i = 0; i < n; ++i) {
    const int head = s.tokens[i].head;
    if (head < 0 || head > n) {
      throw DataError(Where(source, pending.line_numbers[i]) + "head " +
                      std::to_string(head) + " out of range [0, " +
                      std::to_string(n) + "]");
    }
    if (head == i + 1) {
      throw DataError(Where(source, pending.line_numbers[i]) +
                      "token is its own head");
    }
  }
  int root = -1;
  for (int i = 0; i < n; ++i) {
    if (s.tokens[i].head == 0) {
      if (root < 0) {
        root = i;
      } else {
        s.tokens[i].head = root + 1;
      }
    }
  }
  if (root < 0) s.tokens[0].head = 0;
  if (s.id.empty()) s.id = "s" + std::to_string(ordinal);
  out.push_back(std::move(s));
}

}  // namespace

std::string_view LabelName(BioLabel label) {
  switch (label) {
    case BioLabel::kBA: return "BA";
    case BioLabel::kIA: return "IA";
    case BioLabel::kBO: return "BO";
    case BioLabel::kIO: return "IO";
    case BioLabel::kO: return "O";
  }
  return "O";
}

std::optional<BioLabel> ParseLabel(std::string_view name) {
  for (BioLabel label : kFullLabels) {
    if (LabelName(label) == name) return label;
  }
  return std::nullopt;
}

int LabelCount(LabelMode mode) { return mode == LabelMode::kFull ? 5 : 3; }

BioLabel ProjectLabel(BioLabel label, LabelMode mode) {
  if (mode == LabelMode::kAspectOnly &&
      (label == BioLabel::kBO || label == BioLabel::kIO)) {
    return BioLabel::kO;
  }
  return label;
}

int LabelIndex(BioLabel label, LabelMode mode) {
  label = ProjectLabel(label, mode);
  if (mode == LabelMode::kFull) return static_cast<int>(label);
  return label == BioLabel::kO ? 2 : static_cast<int>(label);
}

BioLabel LabelAt(int index, LabelMode mode) {
  return mode == LabelMode::kFull ? kFullLabels[index] : kAspectLabels[index];
}

std::vector<std::string> LabelNames(LabelMode mode) {
  std::vector<std::string> names;
  for (int i = 0; i < LabelCount(mode); ++i) {
    names.emplace_back(LabelName(LabelAt(i, mode)));
  }
  return names;
}

std::optional<LabelMode> LabelModeFromNames(
    std::span<const std::string> names) {
  for (LabelMode mode : {LabelMode::kFull, LabelMode::kAspectOnly}) {
    if (std::ranges::equal(names, LabelNames(mode))) return mode;
  }
  return std::nullopt;
}

std::vector<BioLabel> Sentence::labels() const {
  std::vector<BioLabel> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.label);
  return out;
}

Corpus ParseConll(std::istream& in, std::string_view source) {
  Corpus corpus;
  PendingSentence pending;
  std::string line;
  int line_number = 0;
  bool labeled = false;
  bool has_opinion = false;

  auto flush = [&] {
    if (pending.sentence.tokens.empty()) {
      pending = PendingSentence();
      return;
    }
    FinishSentence(pending, source,
                   static_cast<int>(corpus.sentences.size()) + 1,
                   corpus.sentences);
    pending = PendingSentence();
  };

  while (std::getline(in, line)) {
    ++line_number;
    line = TrimRight(line);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      std::string body = line.substr(1);
      body.erase(0, body.find_first_not_of(" \t"));
      for (std::string_view key : {"sent_id", "id"}) {
        if (body.starts_with(key)) {
          std::string rest = body.substr(key.size());
          rest.erase(0, rest.find_first_not_of(" \t"));
          if (!rest.empty() && rest[0] == '=') {
            rest.erase(0, rest.find_first_not_of(" \t", 1));
            pending.sentence.id = rest;
            break;
          }
        }
      }
      pending.sentence.comments.push_back(line);
      continue;
    }

    std::vector<std::string> cols = SplitColumns(line);
    if (cols.size() != 6) {
      throw DataError(Where(source, line_number) + "expected 6 columns, got " +
                      std::to_string(cols.size()));
    }
    const int position = pending.sentence.size() + 1;
    std::optional<int> index = ParseInt(cols[0]);
    if (!index || *index != position) {
      throw DataError(Where(source, line_number) + "token index '" + cols[0] +
                      "' where " + std::to_string(position) + " was expected");
    }
    std::optional<int> head = ParseInt(cols[3]);
    if (!head) {
      throw DataError(Where(source, line_number) + "non-integer head '" +
                      cols[3] + "'");
    }
    Token token;
    token.surface = cols[1];
    token.pos = cols[2];
    token.head = *head;
    token.relation = cols[4];
    if (cols[5] == "_") {
      token.label = BioLabel::kO;
    } else {
      std::optional<BioLabel> label = ParseLabel(cols[5]);
      if (!label) {
        throw DataError(Where(source, line_number) + "unknown label '" +
                        cols[5] + "'");
      }
      token.label = *label;
      labeled = true;
      has_opinion |= *label == BioLabel::kBO || *label == BioLabel::kIO;
    }
    token.line = line;
    pending.sentence.tokens.push_back(std::move(token));
    pending.line_numbers.push_back(line_number);
  }
  flush();

  corpus.mode =
      labeled && !has_opinion ? LabelMode::kAspectOnly : LabelMode::kFull;
  return corpus;
}

Corpus ReadConllFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path);
  return ParseConll(in, path);
}

void WriteSentence(std::ostream& out, const Sentence& sentence,
                   std::span<const BioLabel> labels) {
  for (const std::string& c : sentence.comments) out << c << '\n';
  for (int i = 0; i < sentence.size(); ++i) {
    const Token& t = sentence.tokens[i];
    const std::string_view label = LabelName(labels[i]);
    if (!t.line.empty()) {
      const char sep = t.line.find('\t') != std::string::npos ? '\t' : ' ';
      size_t cut = t.line.find_last_of(sep == '\t' ? "\t" : " \t");
      out << t.line.substr(0, cut + 1) << label << '\n';
    } else {
      out << i + 1 << '\t' << t.surface << '\t' << t.pos << '\t' << t.head
          << '\t' << t.relation << '\t' << label << '\n';
    }
  }
  out << '\n';
}

void WriteConll(std::ostream& out, const Corpus& corpus) {
  for (const Sentence& s : corpus.sentences) WriteSentence(out, s, s.labels());
}

std::string Lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Vocabulary::Vocabulary() { Add(kUnkWord); }

int Vocabulary::Add(std::string_view word) {
  std::string key = Lowercase(word);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const int id = size();
  index_.emplace(key, id);
  words_.push_back(std::move(key));
  return id;
}

int Vocabulary::Lookup(std::string_view word) const {
  auto it = index_.find(Lowercase(word));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::Contains(std::string_view word) const {
  return index_.contains(Lowercase(word));
}

Vocabulary BuildVocab(const Corpus& corpus, int min_count) {
  std::map<std::string, int> counts;
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens) ++counts[Lowercase(t.surface)];
  }
  Vocabulary vocab;
  for (const auto& [word, count] : counts) {
    if (count >= min_count && word != Vocabulary::kUnkWord) vocab.Add(word);
  }
  return vocab;
}

EmbeddingMatrix LoadEmbeddings(std::istream& in, const Vocabulary& vocab,
                               int d, uint64_t seed) {
  if (d <= 0) throw DataError("embedding dimension must be positive");
  EmbeddingMatrix matrix(d, vocab.size());
  Rng rng(seed);
  FillUniform(matrix, UniformInitBound(d), rng);

  // A lowercase file entry wins over case variants of the same word.
  std::vector<bool> exact(vocab.size(), false);
  std::vector<bool> seen(vocab.size(), false);
  std::string line;
  int line_number = 0;
  Eigen::VectorXd values(d);
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream ss(line);
    std::vector<std::string> fields;
    std::string f;
    while (ss >> f) fields.push_back(f);
    if (fields.empty()) continue;
    if (line_number == 1 && fields.size() == 2 && ParseInt(fields[0]) &&
        ParseInt(fields[1]) && d != 1) {
      if (*ParseInt(fields[1]) != d) {
        throw DataError("embeddings:1: header dimension " + fields[1] +
                        " does not match " + std::to_string(d));
      }
      continue;
    }
    if (static_cast<int>(fields.size()) != d + 1) {
      throw DataError("embeddings:" + std::to_string(line_number) +
                      ": expected " + std::to_string(d) + " values, got " +
                      std::to_string(fields.size() - 1));
    }
    for (int i = 0; i < d; ++i) {
      const std::string& field = fields[i + 1];
      double v = 0.0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size() ||
          !std::isfinite(v)) {
        throw DataError("embeddings:" + std::to_string(line_number) +
                        ": bad value '" + field + "'");
      }
      values(i) = v;
    }
    const std::string& word = fields[0];
    if (!vocab.Contains(word)) continue;
    const int id = vocab.Lookup(word);
    const bool is_exact = Lowercase(word) == word;
    if (seen[id] && (exact[id] || !is_exact)) continue;
    matrix.col(id) = values;
    seen[id] = true;
    exact[id] = is_exact;
  }
  return matrix;
}

EmbeddingMatrix RandomEmbeddings(const Vocabulary& vocab, int d,
                                 uint64_t seed) {
  std::istringstream empty;
  return LoadEmbeddings(empty, vocab, d, seed);
}

std::vector<BioLabel> EncodeLabels(std::span<const Span> spans, int n,
                                   LabelMode mode) {
  std::vector<BioLabel> labels(n, BioLabel::kO);
  std::vector<bool> covered(n, false);
  for (const Span& span : spans) {
    if (span.start < 1 || span.end < span.start || span.end > n) {
      throw DataError("span [" + std::to_string(span.start) + "," +
                      std::to_string(span.end) + "] outside sentence of " +
                      std::to_string(n) + " tokens");
    }
    for (int p = span.start; p <= span.end; ++p) {
      if (covered[p - 1]) {
        throw DataError("overlapping spans at token " + std::to_string(p));
      }
      covered[p - 1] = true;
    }
    const bool aspect = span.category == Category::kAspect;
    if (!aspect && mode == LabelMode::kAspectOnly) continue;
    labels[span.start - 1] = aspect ? BioLabel::kBA : BioLabel::kBO;
    for (int p = span.start + 1; p <= span.end; ++p) {
      labels[p - 1] = aspect ? BioLabel::kIA : BioLabel::kIO;
    }
  }
  return labels;
}

std::vector<Span> DecodeLabels(std::span<const BioLabel> labels) {
  std::vector<Span> spans;
  std::optional<Span> open;
  auto close = [&] {
    if (open) spans.push_back(*open);
    open.reset();
  };
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    const int pos = i + 1;
    switch (labels[i]) {
      case BioLabel::kO:
        close();
        break;
      case BioLabel::kBA:
      case BioLabel::kBO:
        close();
        open = Span{pos, pos,
                    labels[i] == BioLabel::kBA ? Category::kAspect
                                               : Category::kOpinion};
        break;
      case BioLabel::kIA:
      case BioLabel::kIO: {
        const Category cat = labels[i] == BioLabel::kIA ? Category::kAspect
                                                        : Category::kOpinion;
        if (open && open->category == cat) {
          open->end = pos;
        } else {
          close();
          open = Span{pos, pos, cat};
        }
        break;
      }
    }
  }
  close();
  return spans;
}

CorpusStats ComputeCorpusStats(const Corpus& corpus) {
  CorpusStats stats;
  stats.mode = corpus.mode;
  for (const Sentence& s : corpus.sentences) {
    ++stats.sentences;
    stats.tokens += s.size();
    for (const Span& span : DecodeLabels(s.labels())) {
      if (span.category == Category::kAspect) {
        ++stats.aspect_spans;
      } else {
        ++stats.opinion_spans;
      }
    }
  }
  return stats;
}

}  // namespace rncrf

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

#include "rncrf/checkpoint.h"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "rncrf/errors.h"

namespace rncrf {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr std::array<char, 6> kMagic = {'R', 'N', 'C', 'R', 'F', '\x01'};
// Strings and tables longer than this are treated as corruption.
constexpr uint32_t kMaxLength = 1u << 28;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void Bytes(const void* data, size_t size) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  }
  void U32(uint32_t v) { Bytes(&v, sizeof(v)); }
  void String(const std::string& s) {
    U32(static_cast<uint32_t>(s.size()));
    Bytes(s.data(), s.size());
  }
  template <typename Range>
  void Strings(const Range& items) {
    for (const std::string& s : items) String(s);
  }
  template <typename Range>
  void CountedStrings(const Range& items) {
    U32(static_cast<uint32_t>(items.size()));
    Strings(items);
  }
  void Matrix(const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double v = m(r, c);
        Bytes(&v, sizeof(v));
      }
    }
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void Bytes(void* data, size_t size) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<size_t>(in_.gcount()) != size) {
      throw DataError("checkpoint is truncated");
    }
  }
  uint32_t U32() {
    uint32_t v = 0;
    Bytes(&v, sizeof(v));
    return v;
  }
  uint32_t Length() {
    const uint32_t n = U32();
    if (n > kMaxLength) throw DataError("checkpoint length field too large");
    return n;
  }
  std::string String() {
    std::string s(Length(), '\0');
    Bytes(s.data(), s.size());
    return s;
  }
  std::vector<std::string> Strings(uint32_t count) {
    std::vector<std::string> out;
    out.reserve(count);
    for (uint32_t i = 0; i < count; ++i) out.push_back(String());
    return out;
  }
  std::vector<std::string> CountedStrings() { return Strings(Length()); }
  Eigen::MatrixXd Matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        double v = 0.0;
        Bytes(&v, sizeof(v));
        m(r, c) = v;
      }
    }
    return m;
  }
  bool AtEnd() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::istream& in_;
};

}  // namespace

void SaveCheckpoint(const Model& model, std::ostream& out) {
  model.Validate();
  Writer w(out);
  w.Bytes(kMagic.data(), kMagic.size());
  w.U32(static_cast<uint32_t>(model.dim()));
  w.U32(static_cast<uint32_t>(model.labels()));
  w.U32(static_cast<uint32_t>(model.window()));
  w.U32(static_cast<uint32_t>(model.feature_dim()));
  w.U32(static_cast<uint32_t>(model.relations.size()));
  w.U32(static_cast<uint32_t>(model.vocab.size()));
  w.Strings(LabelNames(model.label_mode));
  w.Strings(model.relations.names());
  w.Strings(model.vocab.words());

  w.Matrix(model.dtrnn.w_v);
  for (const Eigen::MatrixXd& m : model.dtrnn.w_r) w.Matrix(m);
  w.Matrix(model.dtrnn.b);
  w.Matrix(model.dtrnn.w_e);
  w.Matrix(model.unary.w0);
  for (int t = model.window(); t >= 1; --t) w.Matrix(model.unary.left[t - 1]);
  for (int t = 1; t <= model.window(); ++t) w.Matrix(model.unary.right[t - 1]);
  w.Matrix(model.transitions);

  w.String(std::string(ModeName(model.mode)));
  w.U32(static_cast<uint32_t>(model.features.pos) |
        static_cast<uint32_t>(model.features.namelist) << 1 |
        static_cast<uint32_t>(model.features.lexicon) << 2);
  w.CountedStrings(model.name_lists.terms);
  w.CountedStrings(model.name_lists.words);
  w.CountedStrings(model.lexicon.words);
  if (!out) throw DataError("failed writing checkpoint");
}

void SaveCheckpointFile(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path + " for writing");
  SaveCheckpoint(model, out);
}

Model LoadCheckpoint(std::istream& in) {
  Reader r(in);
  std::array<char, 6> magic{};
  r.Bytes(magic.data(), magic.size());
  if (std::memcmp(magic.data(), kMagic.data(), 5) != 0) {
    throw DataError("not an RNCRF checkpoint (bad magic)");
  }
  if (magic[5] != kMagic[5]) {
    throw DataError("unsupported checkpoint version " +
                    std::to_string(static_cast<int>(magic[5])));
  }
  const uint32_t d = r.U32();
  const uint32_t labels = r.U32();
  const uint32_t window = r.U32();
  const uint32_t feature_dim = r.U32();
  const uint32_t relation_count = r.U32();
  const uint32_t vocab_size = r.U32();
  if (d == 0 || d > 100000 || labels == 0 || labels > 16 || window > 1000 ||
      relation_count == 0 || feature_dim > 18 ||
      vocab_size == 0 || vocab_size > kMaxLength) {
    throw DataError("checkpoint header has implausible dimensions");
  }

  const std::vector<std::string> label_names = r.Strings(labels);
  const std::optional<LabelMode> label_mode = LabelModeFromNames(label_names);
  if (!label_mode) throw DataError("checkpoint has an unknown label set");

  Model model;
  model.label_mode = *label_mode;
  const std::vector<std::string> relations = r.Strings(relation_count);
  if (relations[0] != RelationTable::kUnkRelName) {
    throw DataError("checkpoint relation table lacks <unk-rel>");
  }
  for (uint32_t i = 1; i < relation_count; ++i) {
    if (model.relations.Add(relations[i]) != static_cast<int>(i)) {
      throw DataError("duplicate relation '" + relations[i] + "'");
    }
  }
  const std::vector<std::string> words = r.Strings(vocab_size);
  if (words[0] != Vocabulary::kUnkWord) {
    throw DataError("checkpoint vocabulary lacks <unk>");
  }
  for (uint32_t i = 1; i < vocab_size; ++i) {
    if (model.vocab.Add(words[i]) != static_cast<int>(i)) {
      throw DataError("duplicate vocabulary word '" + words[i] + "'");
    }
  }

  const Eigen::Index input = d + feature_dim;
  model.dtrnn.w_v = r.Matrix(d, d);
  model.dtrnn.w_r.reserve(relation_count);
  for (uint32_t i = 0; i < relation_count; ++i) {
    model.dtrnn.w_r.push_back(r.Matrix(d, d));
  }
  model.dtrnn.b = r.Matrix(d, 1);
  model.dtrnn.w_e = r.Matrix(d, vocab_size);
  model.unary.w0 = r.Matrix(labels, input);
  model.unary.left.resize(window);
  model.unary.right.resize(window);
  for (int t = static_cast<int>(window); t >= 1; --t) {
    model.unary.left[t - 1] = r.Matrix(labels, input);
  }
  for (uint32_t t = 1; t <= window; ++t) {
    model.unary.right[t - 1] = r.Matrix(labels, input);
  }
  model.transitions = r.Matrix(labels, labels);

  const std::string mode_name = r.String();
  const std::optional<Mode> mode = ParseMode(mode_name);
  if (!mode) throw DataError("checkpoint has unknown mode '" + mode_name + "'");
  model.mode = *mode;
  const uint32_t flags = r.U32();
  if (flags > 7) throw DataError("checkpoint has unknown feature flags");
  model.features.pos = flags & 1u;
  model.features.namelist = flags & 2u;
  model.features.lexicon = flags & 4u;
  if (static_cast<uint32_t>(model.features.dim()) != feature_dim) {
    throw DataError("checkpoint feature flags disagree with feature dim");
  }
  for (std::string& s : r.CountedStrings()) model.name_lists.terms.insert(std::move(s));
  for (std::string& s : r.CountedStrings()) model.name_lists.words.insert(std::move(s));
  for (std::string& s : r.CountedStrings()) model.lexicon.words.insert(std::move(s));
  if (!r.AtEnd()) throw DataError("trailing bytes after checkpoint");
  model.Validate();
  return model;
}

Model LoadCheckpointFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path);
  return LoadCheckpoint(in);
}

}  // namespace rncrf

// Copyright 2026 The GEM Embedding Authors.
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

#include "gem/vecstore.h"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "gem/error.h"

namespace gem {
namespace {

// Splits on runs of spaces and tabs.
void SplitFields(std::string_view line, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos == line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
}

bool ParseInteger(std::string_view field) {
  std::size_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && ptr == field.data() + field.size();
}

float ParseComponent(std::string_view field, std::size_t line_no) {
  // from_chars rejects a leading '+'.
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  float value = 0.0f;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("non-numeric vector component '" + std::string(field) +
                         "'",
                     line_no);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite vector component '" + std::string(field) +
                         "'",
                     line_no);
  }
  return value;
}

}  // namespace

void WordVectorStore::Add(std::string word, std::span<const float> values) {
  if (index_.count(word) != 0) {
    ++duplicates_;
    return;
  }
  index_.emplace(word, static_cast<std::uint32_t>(vocab_.size()));
  vocab_.push_back(std::move(word));
  data_.insert(data_.end(), values.begin(), values.end());
}

WordVectorStore WordVectorStore::Load(std::istream& in,
                                      std::optional<std::size_t> expected_dim) {
  WordVectorStore store;
  std::string line;
  std::vector<std::string_view> fields;
  std::vector<float> values;
  std::size_t line_no = 0;
  std::optional<std::size_t> header_dim;
  bool dim_known = false;
  if (expected_dim) {
    if (*expected_dim == 0) throw ParseError("expected dimension is zero", 0);
    store.dim_ = *expected_dim;
    dim_known = true;
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    SplitFields(line, fields);
    if (fields.empty()) continue;

    if (line_no == 1 && fields.size() == 2 && ParseInteger(fields[0]) &&
        ParseInteger(fields[1])) {
      std::size_t dim = 0;
      std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(),
                      dim);
      header_dim = dim;
      continue;
    }

    if (!dim_known) {
      if (fields.size() < 2) {
        throw ParseError("line has no vector components", line_no);
      }
      store.dim_ = fields.size() - 1;
      dim_known = true;
    }
    if (fields.size() != store.dim_ + 1) {
      throw ParseError("expected " + std::to_string(store.dim_) +
                           " components, found " +
                           std::to_string(fields.size() - 1),
                       line_no);
    }
    values.resize(store.dim_);
    for (std::size_t k = 0; k < store.dim_; ++k) {
      values[k] = ParseComponent(fields[k + 1], line_no);
    }
    store.Add(std::string(fields[0]), values);
  }

  if (store.empty()) throw ParseError("no word vectors in input", 0);
  if (header_dim && *header_dim != store.dim_) {
    throw ParseError("header declares dimension " + std::to_string(*header_dim) +
                         " but rows have " + std::to_string(store.dim_),
                     1);
  }
  return store;
}

WordVectorStore WordVectorStore::LoadFile(
    const std::string& path, std::optional<std::size_t> expected_dim) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vector file: " + path);
  return Load(in, expected_dim);
}

WordVectorStore WordVectorStore::FromRows(std::size_t dim,
                                          std::span<const std::string> words,
                                          std::span<const Vector> rows) {
  if (dim == 0) throw DataError("FromRows: dimension must be positive");
  if (words.size() != rows.size()) {
    throw DataError("FromRows: word and row counts differ");
  }
  WordVectorStore store;
  store.dim_ = dim;
  std::vector<float> values(dim);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (rows[i].size() != dim) {
      throw DataError("FromRows: row for '" + words[i] + "' has length " +
                      std::to_string(rows[i].size()));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (!std::isfinite(rows[i][k])) {
        throw DataError("FromRows: non-finite component for '" + words[i] +
                        "'");
      }
      values[k] = static_cast<float>(rows[i][k]);
    }
    store.Add(words[i], values);
  }
  return store;
}

std::optional<std::size_t> WordVectorStore::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vector WordVectorStore::vector(std::size_t index) const {
  std::span<const float> r = row(index);
  return Vector(r.begin(), r.end());
}

void WordVectorStore::Write(std::ostream& out) const {
  std::array<char, 64> buf;
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    out << vocab_[i];
    for (float value : row(i)) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
      out << ' ' << std::string_view(buf.data(), ptr - buf.data());
    }
    out << '\n';
  }
}

WordVectorStore concat_stores(std::span<const WordVectorStore> stores) {
  if (stores.empty()) throw DataError("concat_stores: no stores given");
  WordVectorStore out;
  for (const WordVectorStore& s : stores) out.dim_ += s.dim();

  std::vector<float> values(out.dim_);
  for (const WordVectorStore& source : stores) {
    for (const std::string& word : source.vocab()) {
      if (out.index_.count(word) != 0) continue;
      std::size_t offset = 0;
      for (const WordVectorStore& s : stores) {
        std::optional<std::size_t> idx = s.find(word);
        if (idx) {
          std::span<const float> r = s.row(*idx);
          std::copy(r.begin(), r.end(), values.begin() + offset);
        } else {
          std::fill_n(values.begin() + offset, s.dim(), 0.0f);
        }
        offset += s.dim();
      }
      out.Add(word, values);
    }
  }
  return out;
}

std::size_t oov_hash_index(std::string_view word, std::size_t vocab_size) {
  if (vocab_size == 0) throw DataError("oov_hash_index: empty vocabulary");
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int digest_len = 0;
  if (EVP_Digest(word.data(), word.size(), digest.data(), &digest_len,
                 EVP_sha256(), nullptr) != 1 ||
      digest_len != 32) {
    throw Error("SHA-256 computation failed");
  }
  std::uint64_t h = 0;
  for (int i = 0; i < 8; ++i) h = (h << 8) | digest[i];
  return static_cast<std::size_t>(h % vocab_size);
}

Resolution resolve_token(std::string_view word, const WordVectorStore& store,
                         OovPolicy policy) {
  if (store.empty()) throw DataError("resolve: empty word vector store");
  if (std::optional<std::size_t> idx = store.find(word)) {
    return {Resolution::Kind::kInVocab, *idx};
  }
  switch (policy.mode) {
    case OovMode::kHashToVocab:
      return {Resolution::Kind::kHashed, oov_hash_index(word, store.size())};
    case OovMode::kZeroVector:
      return {Resolution::Kind::kZero, 0};
    case OovMode::kSkipToken:
      break;
  }
  return {Resolution::Kind::kSkipped, 0};
}

std::optional<Vector> resolve(std::string_view word,
                              const WordVectorStore& store, OovPolicy policy) {
  const Resolution res = resolve_token(word, store, policy);
  switch (res.kind) {
    case Resolution::Kind::kInVocab:
    case Resolution::Kind::kHashed:
      return store.vector(res.index);
    case Resolution::Kind::kZero:
      return Vector(store.dim(), 0.0);
    case Resolution::Kind::kSkipped:
      break;
  }
  return std::nullopt;
}

}  // namespace gem

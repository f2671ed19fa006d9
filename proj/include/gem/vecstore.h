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

// Pre-trained word vectors: text loading, multi-source concatenation and
// out-of-vocabulary resolution.

#ifndef GEM_VECSTORE_H_
#define GEM_VECSTORE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gem/linalg/matrix.h"

namespace gem {

// Immutable table of word vectors in file order. Components are held as
// single-precision floats (the precision of the text sources) and widened to
// double on lookup.
class WordVectorStore {
 public:
  WordVectorStore() = default;

  // Reads `word c1 ... cd` lines. A first line made of exactly two integers is
  // a `count dim` header and is skipped. Duplicate words keep their first
  // vector. Throws ParseError (with 1-based line number) on dimension
  // mismatch, non-numeric or non-finite components, and on empty input.
  static WordVectorStore Load(std::istream& in,
                              std::optional<std::size_t> expected_dim = {});
  static WordVectorStore LoadFile(const std::string& path,
                                  std::optional<std::size_t> expected_dim = {});

  // Builds a store from in-memory rows; duplicates keep the first row.
  static WordVectorStore FromRows(std::size_t dim,
                                  std::span<const std::string> words,
                                  std::span<const Vector> rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vocab_.size(); }
  bool empty() const { return vocab_.empty(); }
  const std::vector<std::string>& vocab() const { return vocab_; }
  std::size_t duplicate_count() const { return duplicates_; }

  std::optional<std::size_t> find(std::string_view word) const;
  std::span<const float> row(std::size_t index) const {
    return {data_.data() + index * dim_, dim_};
  }
  Vector vector(std::size_t index) const;

  // Writes one `word c1 ... cd` line per entry with the shortest decimal form
  // that reads back to the same float.
  void Write(std::ostream& out) const;

 private:
  friend WordVectorStore concat_stores(std::span<const WordVectorStore>);

  void Add(std::string word, std::span<const float> values);

  std::size_t dim_ = 0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<float> data_;
  std::size_t duplicates_ = 0;
};

// Joins stores side by side. The vocabulary is the union in first-appearance
// order; a word absent from a store gets zeros for that store's segment.
WordVectorStore concat_stores(std::span<const WordVectorStore> stores);

enum class OovMode { kHashToVocab, kZeroVector, kSkipToken };

struct OovPolicy {
  OovMode mode = OovMode::kHashToVocab;
};

// Index of the in-vocabulary word an OOV string maps to: the first 8 bytes of
// SHA-256(word) as a big-endian integer, modulo vocab_size.
std::size_t oov_hash_index(std::string_view word, std::size_t vocab_size);

struct Resolution {
  enum class Kind { kInVocab, kHashed, kZero, kSkipped };
  Kind kind = Kind::kSkipped;
  std::size_t index = 0;  // valid for kInVocab and kHashed

  bool is_oov() const { return kind != Kind::kInVocab; }
};

Resolution resolve_token(std::string_view word, const WordVectorStore& store,
                         OovPolicy policy);

// Vector for `word`, or nullopt when the policy skips the token.
std::optional<Vector> resolve(std::string_view word,
                              const WordVectorStore& store, OovPolicy policy);

}  // namespace gem

#endif  // GEM_VECSTORE_H_

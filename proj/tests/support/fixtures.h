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


// Random inputs, synthetic word vectors and scratch directories shared by the
// unit tests and the acceptance binary.

#ifndef GEM_TESTS_SUPPORT_FIXTURES_H_
#define GEM_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gem/linalg/matrix.h"
#include "gem/vecstore.h"

namespace gem::testing {

using Rng = std::mt19937_64;

Vector RandomVector(std::size_t n, Rng& rng);
Matrix RandomMatrix(std::size_t rows, std::size_t cols, Rng& rng);

// Max |a - b| over all entries; infinity on a shape mismatch.
double MaxAbsDiff(const Matrix& a, const Matrix& b);
double MaxAbsDiff(std::span<const double> a, std::span<const double> b);

// `words` Gaussian vectors named w0, w1, ... The vectors are rounded to float
// on storage, so callers should read them back through the store.
WordVectorStore SyntheticStore(std::size_t words, std::size_t dim,
                               std::uint64_t seed);

// Space-joined random words of `store`, lengths uniform in [min_len, max_len].
std::vector<std::string> SyntheticSentences(const WordVectorStore& store,
                                            std::size_t count,
                                            std::size_t min_len,
                                            std::size_t max_len,
                                            std::uint64_t seed);

// Five short sentences over a ten-word, six-dimensional vocabulary with
// hand-picked vectors. One sentence repeats a word, one is longer than the
// dimension and one is a single word.
struct ToyCorpus {
  WordVectorStore store;
  std::vector<std::string> sentences;
};
ToyCorpus MakeToyCorpus();

// Fresh directory under the system temp path, removed on destruction.
class ScratchDir {
 public:
  ScratchDir();
  ~ScratchDir();
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  // Writes `content` to path()/name and returns the full path.
  std::string Write(const std::string& name, const std::string& content) const;

 private:
  std::filesystem::path path_;
};

std::string ReadFile(const std::string& path);

}  // namespace gem::testing

#endif  // GEM_TESTS_SUPPORT_FIXTURES_H_

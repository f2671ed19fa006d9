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


#include "support/fixtures.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace gem::testing {

Vector RandomVector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

Matrix RandomMatrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (double& x : m.data()) x = normal(rng);
  return m;
}

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  return MaxAbsDiff(a.data(), b.data());
}

double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

WordVectorStore SyntheticStore(std::size_t words, std::size_t dim,
                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> names;
  std::vector<Vector> rows;
  names.reserve(words);
  rows.reserve(words);
  for (std::size_t i = 0; i < words; ++i) {
    names.push_back("w" + std::to_string(i));
    rows.push_back(RandomVector(dim, rng));
  }
  return WordVectorStore::FromRows(dim, names, rows);
}

std::vector<std::string> SyntheticSentences(const WordVectorStore& store,
                                            std::size_t count,
                                            std::size_t min_len,
                                            std::size_t max_len,
                                            std::uint64_t seed) {
  Rng rng(seed);
  // Zipf-ish word frequencies so some words recur within and across sentences.
  std::vector<double> weights(store.size());
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / (i + 1.0);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::string text;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) text.push_back(' ');
      text += store.vocab()[pick(rng)];
    }
    out.push_back(std::move(text));
  }
  return out;
}

ToyCorpus MakeToyCorpus() {
  // Dyadic fractions, so float storage keeps them exact.
  const std::vector<std::string> words = {"ducks", "swim", "in",   "the",
                                          "river", "two",  "there", "are",
                                          "cold",  "water"};
  const std::vector<Vector> rows = {
      {0.8125, -0.34375, 0.15625, 0.59375, -0.21875, 0.0625},
      {-0.40625, 0.71875, 0.28125, -0.09375, 0.53125, -0.65625},
      {0.09375, 0.15625, -0.03125, 0.21875, 0.125, 0.046875},
      {0.171875, 0.078125, 0.234375, -0.015625, 0.109375, 0.140625},
      {0.65625, 0.28125, -0.78125, 0.40625, 0.1875, -0.34375},
      {-0.28125, -0.59375, 0.46875, 0.84375, -0.71875, 0.15625},
      {0.203125, -0.046875, 0.140625, 0.265625, 0.015625, -0.109375},
      {-0.078125, 0.234375, 0.109375, 0.046875, -0.171875, 0.203125},
      {0.53125, -0.90625, -0.21875, 0.34375, 0.78125, 0.40625},
      {0.71875, 0.46875, -0.53125, -0.65625, 0.28125, 0.90625},
  };
  ToyCorpus toy{WordVectorStore::FromRows(6, words, rows), {}};
  toy.sentences = {
      "there are two ducks",
      "ducks swim in the cold river river",
      "the river",
      "there are two ducks in the cold water swim",
      "water",
  };
  return toy;
}

ScratchDir::ScratchDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("gem_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(path_);
}

ScratchDir::~ScratchDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string ScratchDir::Write(const std::string& name,
                              const std::string& content) const {
  const std::filesystem::path p = path_ / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return p.string();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace gem::testing

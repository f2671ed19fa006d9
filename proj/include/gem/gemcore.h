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

// Geometric sentence embeddings.
//
// Every word of a sentence is weighted by three scores computed from the
// Gram-Schmidt residual of its vector against a window of neighbouring words:
//
//   novelty      exp(|residual| / |v|)
//   significance |residual| / (2m + 1)
//   uniqueness   exp(-|sigma_D * (q^T D)| / h), q the unit residual and D the
//                corpus principal directions selected for the sentence
//
// The sentence vector is the weighted sum of its word vectors, optionally with
// the selected corpus directions projected out. Corpus directions are the
// leading left singular vectors of a matrix of coarse per-sentence embeddings
// sum_j sigma_j^t u_j taken from each sentence matrix's SVD.
//
// encode_corpus runs the two phases: fit the corpus model over all sentences,
// then embed each sentence independently.

#ifndef GEM_GEMCORE_H_
#define GEM_GEMCORE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gem/linalg/matrix.h"
#include "gem/textproc.h"
#include "gem/vecstore.h"

namespace gem {

enum class RerankMode {
  kSigmaWeighted,  // o_i = sigma_i * |S^T d_i|
  kUnweighted,     // o_i = |S^T d_i|
};

enum class RemovalMode {
  kSdr,   // per-sentence re-ranked directions
  kSir,   // top-h corpus directions for every sentence
  kNone,  // no corpus model: uniqueness is 1 and nothing is removed
};

enum class WeightingMode {
  kGem,      // sum of the enabled scores
  kUniform,  // every word weighs 1 (plain sum of vectors)
};

// Which scores contribute to a word's weight. Used for ablations.
struct ScoreToggles {
  bool novelty = true;
  bool significance = true;
  bool uniqueness = true;
};

struct GemConfig {
  std::size_t window_radius = 7;          // m
  std::size_t candidate_directions = 45;  // K
  std::size_t selected_directions = 17;   // h
  int singular_exponent = 3;              // t
  RerankMode rerank = RerankMode::kSigmaWeighted;
  RemovalMode removal = RemovalMode::kSdr;
  WeightingMode weighting = WeightingMode::kGem;
  ScoreToggles scores;

  // Throws DataError unless m >= 1, 1 <= h <= K, t >= 1 and at least one
  // score is enabled under kGem weighting.
  void Validate() const;
};

// Defaults used for question re-ranking: m = 6, h = 15, unweighted re-rank.
GemConfig ranking_defaults();

struct SentenceMatrix {
  std::vector<std::string> tokens;  // tokens that resolved to a vector
  Matrix vectors;                   // d x n, column j is tokens[j]'s vector
};

struct CorpusModel {
  Matrix directions;  // d x k, orthonormal columns
  Vector sigma;       // non-increasing

  std::size_t size() const { return sigma.size(); }
};

// Directions chosen for one sentence, in selection order.
struct DirectionSet {
  Matrix directions;                // d x k
  Vector sigma;                     // corpus singular value of each column
  std::vector<std::size_t> source;  // column index in the CorpusModel

  std::size_t size() const { return sigma.size(); }
};

struct WordScores {
  double novelty = 0.0;
  double significance = 0.0;
  double uniqueness = 0.0;
  double total = 0.0;  // sum of the enabled scores
};

struct SentenceEmbedding {
  Vector vector;
  // Filled when EncodeOptions::keep_scores is set.
  std::vector<std::string> tokens;
  std::vector<WordScores> scores;
};

// sum_j sigma_j^exponent * U[:, j] over the thin SVD of `s`.
Vector coarse_embedding(const Matrix& s, int exponent);

// Leading `candidate_directions` left singular vectors of the matrix whose
// columns are the coarse embeddings of the sentences. Throws DataError on an
// empty corpus.
CorpusModel fit_corpus(std::span<const SentenceMatrix> sentences,
                       const GemConfig& cfg, std::size_t threads = 1);

// Re-ranks the model directions by their correlation with `s` (descending,
// ties by model order) and keeps the first h.
DirectionSet rerank_select(const Matrix& s, const CorpusModel& model,
                           const GemConfig& cfg);

// First `count` model directions in singular-value order.
DirectionSet top_directions(const CorpusModel& model, std::size_t count);

// Neighbours of word `index` (0-based) within `radius` positions, in sentence
// order and truncated at the sentence boundary, followed by the word itself.
// Throws DataError when index is out of range.
Matrix window_matrix(const Matrix& s, std::size_t index, std::size_t radius);

// Scores of the last column of `window` against the preceding columns and the
// selected corpus directions. The significance denominator is always 2m + 1
// and the uniqueness denominator always h, whatever the window and selection
// sizes.
WordScores word_scores(const Matrix& window, const DirectionSet& selected,
                       const GemConfig& cfg);

// sum_i weights[i].total * s[:, i], accumulated in column order.
Vector sentence_embedding(const Matrix& s, std::span<const WordScores> weights);

// c - sum_j (d_j^T c) d_j, with every coefficient taken against the input c.
Vector remove_principal(std::span<const double> c, const Matrix& directions);

// Weights and vector for one sentence given the fitted model (ignored under
// RemovalMode::kNone).
SentenceEmbedding embed_sentence(const SentenceMatrix& sentence,
                                 const CorpusModel& model,
                                 const GemConfig& cfg);

struct TokenStats {
  std::size_t tokens = 0;      // tokens produced by the tokenizer
  std::size_t oov = 0;         // tokens not in the vocabulary
  std::size_t skipped = 0;     // OOV tokens dropped by the skip policy
};

// Tokens resolved to vectors. nullopt when nothing resolves.
std::optional<SentenceMatrix> build_sentence_matrix(
    std::span<const std::string> tokens, const WordVectorStore& store,
    OovPolicy oov, TokenStats* stats = nullptr);

struct EncodeOptions {
  std::size_t threads = 1;
  bool keep_scores = false;
};

struct EncodeResult {
  std::vector<SentenceEmbedding> embeddings;
  CorpusModel model;
  TokenStats token_stats;
  // Sentences without any resolvable token; their embedding is zero.
  std::vector<std::size_t> empty_sentences;
};

// Full pipeline over raw sentences. The corpus model is fitted on exactly
// these sentences. Throws DataError when `sentences` is empty or when no
// sentence has a resolvable token.
EncodeResult encode_corpus(std::span<const std::string> sentences,
                           const WordVectorStore& store,
                           const TokenizerConfig& tok, OovPolicy oov,
                           const GemConfig& cfg,
                           const EncodeOptions& options = {});

}  // namespace gem

#endif  // GEM_GEMCORE_H_

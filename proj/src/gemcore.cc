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

#include "gem/gemcore.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gem/error.h"
#include "gem/linalg/decompose.h"
#include "gem/parallel.h"
#include "gem/simd/kernels.h"

namespace gem {
namespace {

DirectionSet SelectColumns(const CorpusModel& model,
                           std::span<const std::size_t> picks) {
  DirectionSet out{Matrix(model.directions.rows(), picks.size()),
                   Vector(picks.size()),
                   std::vector<std::size_t>(picks.begin(), picks.end())};
  for (std::size_t j = 0; j < picks.size(); ++j) {
    std::span<const double> src = model.directions.col(picks[j]);
    std::copy(src.begin(), src.end(), out.directions.col(j).begin());
    out.sigma[j] = model.sigma[picks[j]];
  }
  return out;
}

}  // namespace

void GemConfig::Validate() const {
  if (window_radius < 1) throw DataError("window radius m must be >= 1");
  if (selected_directions < 1) throw DataError("h must be >= 1");
  if (selected_directions > candidate_directions) {
    throw DataError("h (" + std::to_string(selected_directions) +
                    ") must not exceed K (" +
                    std::to_string(candidate_directions) + ")");
  }
  if (singular_exponent < 1) throw DataError("exponent t must be >= 1");
  if (weighting == WeightingMode::kGem &&
      !(scores.novelty || scores.significance || scores.uniqueness)) {
    throw DataError("at least one score must be enabled");
  }
}

GemConfig ranking_defaults() {
  GemConfig cfg;
  cfg.window_radius = 6;
  cfg.selected_directions = 15;
  cfg.rerank = RerankMode::kUnweighted;
  return cfg;
}

Vector coarse_embedding(const Matrix& s, int exponent) {
  const SvdResult svd = svd_thin(s);
  Vector g(s.rows(), 0.0);
  for (std::size_t j = 0; j < svd.sigma.size(); ++j) {
    if (svd.sigma[j] == 0.0) continue;
    simd::axpy(std::pow(svd.sigma[j], exponent), svd.u.col(j), g);
  }
  return g;
}

CorpusModel fit_corpus(std::span<const SentenceMatrix> sentences,
                       const GemConfig& cfg, std::size_t threads) {
  if (sentences.empty()) throw DataError("fit_corpus: empty corpus");
  const std::size_t d = sentences.front().vectors.rows();
  Matrix coarse(d, sentences.size());
  parallel_for(sentences.size(), threads, [&](std::size_t i) {
    if (sentences[i].vectors.rows() != d) {
      throw DataError("fit_corpus: sentence " + std::to_string(i) +
                      " has a different dimension");
    }
    const Vector g =
        coarse_embedding(sentences[i].vectors, cfg.singular_exponent);
    std::copy(g.begin(), g.end(), coarse.col(i).begin());
  });
  LeadingDirections lead =
      top_left_singular(coarse, cfg.candidate_directions);
  return CorpusModel{std::move(lead.directions), std::move(lead.sigma)};
}

DirectionSet rerank_select(const Matrix& s, const CorpusModel& model,
                           const GemConfig& cfg) {
  const std::size_t k = model.size();
  Vector score(k);
  for (std::size_t i = 0; i < k; ++i) {
    double sq = 0.0;
    for (std::size_t w = 0; w < s.cols(); ++w) {
      const double p = simd::dot(s.col(w), model.directions.col(i));
      sq += p * p;
    }
    score[i] = std::sqrt(sq);
    if (cfg.rerank == RerankMode::kSigmaWeighted) score[i] *= model.sigma[i];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return score[a] > score[b];
  });
  order.resize(std::min(cfg.selected_directions, k));
  return SelectColumns(model, order);
}

DirectionSet top_directions(const CorpusModel& model, std::size_t count) {
  std::vector<std::size_t> picks(std::min(count, model.size()));
  std::iota(picks.begin(), picks.end(), 0);
  return SelectColumns(model, picks);
}

Matrix window_matrix(const Matrix& s, std::size_t index, std::size_t radius) {
  const std::size_t n = s.cols();
  if (index >= n) {
    throw DataError("window_matrix: word index " + std::to_string(index) +
                    " out of range for sentence of " + std::to_string(n) +
                    " words");
  }
  const std::size_t lo = index >= radius ? index - radius : 0;
  const std::size_t hi = std::min(n - 1, index + radius);
  Matrix window(s.rows(), hi - lo + 1);
  std::size_t out = 0;
  for (std::size_t j = lo; j <= hi; ++j) {
    if (j == index) continue;
    std::copy(s.col(j).begin(), s.col(j).end(), window.col(out++).begin());
  }
  std::copy(s.col(index).begin(), s.col(index).end(),
            window.col(out).begin());
  return window;
}

WordScores word_scores(const Matrix& window, const DirectionSet& selected,
                       const GemConfig& cfg) {
  const ResidualBasis basis = residual_basis_of_window(window);
  const double residual = basis.r.back();
  const double norm = std::sqrt(simd::squared_norm(basis.r));

  WordScores out;
  out.novelty = norm > 0.0 ? std::exp(residual / norm) : 1.0;
  out.significance =
      residual / static_cast<double>(2 * cfg.window_radius + 1);

  double aligned = 0.0;
  for (std::size_t j = 0; j < selected.size(); ++j) {
    const double p = selected.sigma[j] * simd::dot(basis.q, selected.directions.col(j));
    aligned += p * p;
  }
  // Corpus singular values grow like sigma^t, so the exponent easily passes
  // -745 and exp() underflows. Keep the score strictly positive.
  out.uniqueness = std::max(
      std::exp(-std::sqrt(aligned) /
               static_cast<double>(cfg.selected_directions)),
      std::numeric_limits<double>::min());

  out.total = 0.0;
  if (cfg.scores.novelty) out.total += out.novelty;
  if (cfg.scores.significance) out.total += out.significance;
  if (cfg.scores.uniqueness) out.total += out.uniqueness;
  return out;
}

Vector sentence_embedding(const Matrix& s, std::span<const WordScores> weights) {
  if (weights.size() != s.cols()) {
    throw DataError("sentence_embedding: " + std::to_string(weights.size()) +
                    " weights for " + std::to_string(s.cols()) + " words");
  }
  Vector c(s.rows(), 0.0);
  for (std::size_t i = 0; i < s.cols(); ++i) {
    simd::axpy(weights[i].total, s.col(i), c);
  }
  return c;
}

Vector remove_principal(std::span<const double> c, const Matrix& directions) {
  Vector out(c.begin(), c.end());
  if (directions.cols() == 0) return out;
  if (directions.rows() != c.size()) {
    throw DataError("remove_principal: dimension mismatch");
  }
  Vector coeff(directions.cols());
  for (std::size_t j = 0; j < directions.cols(); ++j) {
    coeff[j] = simd::dot(directions.col(j), c);
  }
  for (std::size_t j = 0; j < directions.cols(); ++j) {
    simd::axpy(-coeff[j], directions.col(j), out);
  }
  return out;
}

SentenceEmbedding embed_sentence(const SentenceMatrix& sentence,
                                 const CorpusModel& model,
                                 const GemConfig& cfg) {
  const Matrix& s = sentence.vectors;
  DirectionSet selected;
  switch (cfg.removal) {
    case RemovalMode::kSdr:
      selected = rerank_select(s, model, cfg);
      break;
    case RemovalMode::kSir:
      selected = top_directions(model, cfg.selected_directions);
      break;
    case RemovalMode::kNone:
      break;
  }

  std::vector<WordScores> weights(s.cols());
  for (std::size_t i = 0; i < s.cols(); ++i) {
    if (cfg.weighting == WeightingMode::kUniform) {
      weights[i].total = 1.0;
      continue;
    }
    weights[i] = word_scores(window_matrix(s, i, cfg.window_radius), selected,
                             cfg);
  }

  SentenceEmbedding out;
  out.vector = sentence_embedding(s, weights);
  if (selected.size() > 0) {
    out.vector = remove_principal(out.vector, selected.directions);
  }
  out.tokens = sentence.tokens;
  out.scores = std::move(weights);
  return out;
}

std::optional<SentenceMatrix> build_sentence_matrix(
    std::span<const std::string> tokens, const WordVectorStore& store,
    OovPolicy oov, TokenStats* stats) {
  SentenceMatrix out;
  out.vectors = Matrix(store.dim(), 0);
  std::vector<double> buffer;
  for (const std::string& token : tokens) {
    const Resolution res = resolve_token(token, store, oov);
    if (stats != nullptr) {
      ++stats->tokens;
      if (res.is_oov()) ++stats->oov;
      if (res.kind == Resolution::Kind::kSkipped) ++stats->skipped;
    }
    switch (res.kind) {
      case Resolution::Kind::kInVocab:
      case Resolution::Kind::kHashed: {
        std::span<const float> row = store.row(res.index);
        buffer.assign(row.begin(), row.end());
        break;
      }
      case Resolution::Kind::kZero:
        buffer.assign(store.dim(), 0.0);
        break;
      case Resolution::Kind::kSkipped:
        continue;
    }
    out.vectors.AppendColumn(buffer);
    out.tokens.push_back(token);
  }
  if (out.tokens.empty()) return std::nullopt;
  return out;
}

EncodeResult encode_corpus(std::span<const std::string> sentences,
                           const WordVectorStore& store,
                           const TokenizerConfig& tok, OovPolicy oov,
                           const GemConfig& cfg, const EncodeOptions& options) {
  cfg.Validate();
  if (sentences.empty()) throw DataError("encode_corpus: empty corpus");
  if (store.empty()) throw DataError("encode_corpus: empty word vector store");

  EncodeResult result;
  std::vector<std::optional<SentenceMatrix>> matrices(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const std::vector<std::string> tokens = tokenize(sentences[i], tok);
    matrices[i] = build_sentence_matrix(tokens, store, oov, &result.token_stats);
    if (!matrices[i]) result.empty_sentences.push_back(i);
  }

  std::vector<SentenceMatrix> fitted;
  std::vector<std::size_t> fitted_index;
  fitted.reserve(sentences.size());
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    if (!matrices[i]) continue;
    fitted.push_back(std::move(*matrices[i]));
    fitted_index.push_back(i);
  }
  if (fitted.empty()) {
    throw DataError("encode_corpus: no sentence has a resolvable token");
  }

  if (cfg.removal != RemovalMode::kNone) {
    result.model = fit_corpus(fitted, cfg, options.threads);
  }

  result.embeddings.resize(sentences.size());
  for (std::size_t i : result.empty_sentences) {
    result.embeddings[i].vector.assign(store.dim(), 0.0);
  }
  parallel_for(fitted.size(), options.threads, [&](std::size_t k) {
    SentenceEmbedding e = embed_sentence(fitted[k], result.model, cfg);
    if (!options.keep_scores) {
      e.tokens.clear();
      e.scores.clear();
    }
    result.embeddings[fitted_index[k]] = std::move(e);
  });
  return result;
}

}  // namespace gem

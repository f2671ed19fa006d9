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

#include "gem/eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <memory>
#include <numeric>
#include <unordered_map>

#include "gem/error.h"
#include "gem/linalg/stats.h"
#include "gem/simd/kernels.h"

namespace gem {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Reads the next line, stripping a trailing CR. Returns false at EOF.
bool NextLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

double ParseScore(std::string_view field, std::size_t row) {
  const std::size_t b = field.find_first_not_of(' ');
  const std::size_t e = field.find_last_not_of(' ');
  if (b == std::string_view::npos) throw ParseError("empty score", row);
  field = field.substr(b, e - b + 1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw ParseError("unparseable score '" + std::string(field) + "'", row);
  }
  return value;
}

}  // namespace

std::vector<SimilarityPair> parse_sts(std::istream& in, StsLayout layout) {
  std::vector<SimilarityPair> pairs;
  std::string line;
  std::size_t row = 0;
  while (NextLine(in, line)) {
    ++row;
    if (IsBlank(line)) continue;
    const std::vector<std::string_view> f = SplitTabs(line);
    if (layout == StsLayout::kSimple3) {
      if (f.size() != 3) {
        throw ParseError("expected 3 tab-separated fields, found " +
                             std::to_string(f.size()),
                         row);
      }
      pairs.push_back({ParseScore(f[0], row), std::string(f[1]), std::string(f[2])});
    } else {
      // Some rows of the public files carry trailing source columns.
      if (f.size() < 7) {
        throw ParseError("expected at least 7 tab-separated fields, found " +
                             std::to_string(f.size()),
                         row);
      }
      pairs.push_back({ParseScore(f[4], row), std::string(f[5]), std::string(f[6])});
    }
  }
  return pairs;
}

Relevance parse_relevance(std::string_view label) {
  if (label == "PerfectMatch") return Relevance::kPerfectMatch;
  if (label == "Relevant") return Relevance::kRelevant;
  if (label == "Irrelevant") return Relevance::kIrrelevant;
  throw DataError("unknown relevance label '" + std::string(label) + "'");
}

std::vector<RankingQuery> parse_ranking(std::istream& queries,
                                        std::istream& candidates) {
  std::vector<RankingQuery> out;
  std::unordered_map<std::string, std::size_t> by_id;
  std::string line;
  std::size_t row = 0;
  while (NextLine(queries, line)) {
    ++row;
    if (IsBlank(line)) continue;
    const std::vector<std::string_view> f = SplitTabs(line);
    if (f.size() != 2) {
      throw ParseError("query file: expected 2 fields, found " +
                           std::to_string(f.size()),
                       row);
    }
    std::string id(f[0]);
    if (!by_id.emplace(id, out.size()).second) {
      throw ParseError("query file: duplicate query id '" + id + "'", row);
    }
    out.push_back({id, std::string(f[1]), {}});
  }

  row = 0;
  while (NextLine(candidates, line)) {
    ++row;
    if (IsBlank(line)) continue;
    const std::vector<std::string_view> f = SplitTabs(line);
    if (f.size() != 3) {
      throw ParseError("candidate file: expected 3 fields, found " +
                           std::to_string(f.size()),
                       row);
    }
    auto it = by_id.find(std::string(f[0]));
    if (it == by_id.end()) {
      throw ParseError("candidate file: unknown query id '" +
                           std::string(f[0]) + "'",
                       row);
    }
    Relevance label;
    try {
      label = parse_relevance(f[1]);
    } catch (const DataError& e) {
      throw ParseError(std::string("candidate file: ") + e.what(), row);
    }
    out[it->second].candidates.push_back({std::string(f[2]), label});
  }

  for (const RankingQuery& q : out) {
    if (q.candidates.empty()) {
      throw DataError("query '" + q.id + "' has no candidates");
    }
  }
  return out;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw DataError("cosine: dimension mismatch");
  const double nu = std::sqrt(simd::squared_norm(u));
  const double nv = std::sqrt(simd::squared_norm(v));
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(simd::dot(u, v) / (nu * nv), -1.0, 1.0);
}

double sts_eval(std::span<const SimilarityPair> pairs,
                std::span<const Vector> embeddings_a,
                std::span<const Vector> embeddings_b) {
  if (pairs.size() != embeddings_a.size() ||
      pairs.size() != embeddings_b.size()) {
    throw DataError("sts_eval: pair and embedding counts differ");
  }
  Vector gold(pairs.size());
  Vector predicted(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    gold[i] = pairs[i].gold;
    predicted[i] = cosine(embeddings_a[i], embeddings_b[i]);
  }
  return 100.0 * pearson(gold, predicted);
}

double average_precision(std::span<const bool> relevant_in_rank_order) {
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < relevant_in_rank_order.size(); ++k) {
    if (!relevant_in_rank_order[k]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

double map_eval(std::span<const RankingQuery> queries,
                std::span<const Vector> query_embeds,
                std::span<const std::vector<Vector>> candidate_embeds) {
  if (queries.size() != query_embeds.size() ||
      queries.size() != candidate_embeds.size()) {
    throw DataError("map_eval: query and embedding counts differ");
  }
  if (queries.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const RankingQuery& q = queries[qi];
    const std::vector<Vector>& cands = candidate_embeds[qi];
    if (cands.size() != q.candidates.size()) {
      throw DataError("map_eval: candidate embedding count differs for query '" +
                      q.id + "'");
    }
    Vector sim(cands.size());
    for (std::size_t c = 0; c < cands.size(); ++c) {
      sim[c] = cosine(query_embeds[qi], cands[c]);
    }
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sim[a] > sim[b]; });
    auto flags = std::make_unique<bool[]>(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
      flags[r] = q.candidates[order[r]].label != Relevance::kIrrelevant;
    }
    total += average_precision({flags.get(), order.size()});
  }
  return total / static_cast<double>(queries.size());
}

}  // namespace gem

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

// Similarity (Pearson over cosine scores) and ranking (mean average
// precision) evaluation, plus the TSV readers that feed them.

#ifndef GEM_EVAL_H_
#define GEM_EVAL_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gem/linalg/matrix.h"

namespace gem {

struct SimilarityPair {
  double gold = 0.0;
  std::string sent_a;
  std::string sent_b;
};

enum class StsLayout {
  kSimple3,  // score \t sent_a \t sent_b
  kStsb7,    // genre \t file \t year \t id \t score \t sent_a \t sent_b [...]
};

// One pair per non-empty row. Throws ParseError naming the 1-based row on a
// wrong field count or an unparseable score.
std::vector<SimilarityPair> parse_sts(std::istream& in, StsLayout layout);

enum class Relevance { kPerfectMatch, kRelevant, kIrrelevant };

// Accepts the label spellings PerfectMatch, Relevant and Irrelevant.
Relevance parse_relevance(std::string_view label);

struct Candidate {
  std::string text;
  Relevance label = Relevance::kIrrelevant;
};

struct RankingQuery {
  std::string id;
  std::string original;
  std::vector<Candidate> candidates;
};

// Reads `query_id \t text` rows and `query_id \t label \t text` candidate
// rows. Queries keep the order of the query file; candidates keep file order
// within their query. Every query needs at least one candidate and every
// candidate a known query.
std::vector<RankingQuery> parse_ranking(std::istream& queries,
                                        std::istream& candidates);

// u.v / (|u| |v|); 0 when either vector is zero.
double cosine(std::span<const double> u, std::span<const double> v);

// 100 * Pearson(gold, cosine(a_i, b_i)).
double sts_eval(std::span<const SimilarityPair> pairs,
                std::span<const Vector> embeddings_a,
                std::span<const Vector> embeddings_b);

// Average precision of one ranked list of relevance flags; 0 when nothing is
// relevant.
double average_precision(std::span<const bool> relevant_in_rank_order);

// Candidates are ranked by cosine with the query (descending, ties in input
// order); PerfectMatch and Relevant count as relevant.
double map_eval(std::span<const RankingQuery> queries,
                std::span<const Vector> query_embeds,
                std::span<const std::vector<Vector>> candidate_embeds);

}  // namespace gem

#endif  // GEM_EVAL_H_

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


#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "gem/error.h"
#include "gem/eval.h"
#include "support/fixtures.h"

namespace gem {
namespace {

std::vector<SimilarityPair> ParseSts(const std::string& text, StsLayout layout) {
  std::istringstream in(text);
  return parse_sts(in, layout);
}

std::size_t StsErrorRow(const std::string& text, StsLayout layout) {
  try {
    ParseSts(text, layout);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no ParseError";
  return 0;
}

std::vector<RankingQuery> ParseRanking(const std::string& q, const std::string& c) {
  std::istringstream qin(q);
  std::istringstream cin(c);
  return parse_ranking(qin, cin);
}

// Average precision by enumerating every cutoff: precision@k summed over the
// ranks k that hold a relevant item, divided by the number of relevant items.
double BruteForceAp(const std::vector<bool>& flags) {
  double sum = 0.0;
  int relevant = 0;
  for (std::size_t k = 1; k <= flags.size(); ++k) {
    if (!flags[k - 1]) continue;
    int hits = 0;
    for (std::size_t j = 0; j < k; ++j) hits += flags[j] ? 1 : 0;
    sum += static_cast<double>(hits) / static_cast<double>(k);
    ++relevant;
  }
  return relevant == 0 ? 0.0 : sum / relevant;
}

TEST(ParseSts, Simple3Row) {
  const auto pairs = ParseSts("2.5\ta b\tc d\n", StsLayout::kSimple3);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].gold, 2.5);
  EXPECT_EQ(pairs[0].sent_a, "a b");
  EXPECT_EQ(pairs[0].sent_b, "c d");
}

TEST(ParseSts, Stsb7RowsIncludingExtraColumns) {
  const std::string text =
      "main-captions\tMSRvid\t2012test\t0001\t5.000\tA plane is taking off.\t"
      "An air plane is taking off.\n"
      "main-news\theadlines\t2015\t0003\t0.500\tx y\tz w\tsrc1\tsrc2\r\n";
  const auto pairs = ParseSts(text, StsLayout::kStsb7);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].gold, 5.0);
  EXPECT_EQ(pairs[0].sent_b, "An air plane is taking off.");
  EXPECT_EQ(pairs[1].gold, 0.5);
  EXPECT_EQ(pairs[1].sent_b, "z w");
}

TEST(ParseSts, BlankRowsAreSkippedButCounted) {
  const std::string text = "1\ta\tb\n\n2\tc\n";
  EXPECT_EQ(StsErrorRow(text, StsLayout::kSimple3), 3u);
  EXPECT_EQ(ParseSts("1\ta\tb\n\n2\tc\td\n", StsLayout::kSimple3).size(), 2u);
}

TEST(ParseSts, Errors) {
  EXPECT_EQ(StsErrorRow("1\ta\tb\n2\tonly two\n", StsLayout::kSimple3), 2u);
  EXPECT_EQ(StsErrorRow("1\ta\tb\tc\n", StsLayout::kSimple3), 1u);
  EXPECT_EQ(StsErrorRow("x\ta\tb\n", StsLayout::kSimple3), 1u);
  EXPECT_EQ(StsErrorRow("nan\ta\tb\n", StsLayout::kSimple3), 1u);
  EXPECT_EQ(StsErrorRow("g\tf\ty\ti\t1.0\ta\n", StsLayout::kStsb7), 1u);
}

TEST(ParseRanking, GroupsCandidatesByQuery) {
  const auto q = ParseRanking("q1\tfirst\nq2\tsecond\n",
                              "q2\tRelevant\tb1\nq1\tIrrelevant\ta1\n"
                              "q1\tPerfectMatch\ta2\n");
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[0].id, "q1");
  ASSERT_EQ(q[0].candidates.size(), 2u);
  EXPECT_EQ(q[0].candidates[1].text, "a2");
  EXPECT_EQ(q[0].candidates[1].label, Relevance::kPerfectMatch);
  EXPECT_EQ(q[1].candidates[0].label, Relevance::kRelevant);
}

TEST(ParseRanking, Errors) {
  EXPECT_THROW(ParseRanking("q1\ta\nq1\tb\n", "q1\tRelevant\tx\n"), ParseError);
  EXPECT_THROW(ParseRanking("q1\ta\n", "q9\tRelevant\tx\n"), ParseError);
  EXPECT_THROW(ParseRanking("q1\ta\n", "q1\tGood\tx\n"), ParseError);
  EXPECT_THROW(ParseRanking("q1\ta\nq2\tb\n", "q1\tRelevant\tx\n"), DataError);
  EXPECT_THROW(ParseRanking("q1\n", ""), ParseError);
}

TEST(Cosine, Examples) {
  EXPECT_DOUBLE_EQ(cosine(Vector{1, 0}, Vector{1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(cosine(Vector{1, 0}, Vector{0, 1}), 0.0);
  EXPECT_NEAR(cosine(Vector{1, 1}, Vector{1, 0}), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(cosine(Vector{0, 0}, Vector{1, 0}), 0.0);
  EXPECT_THROW(cosine(Vector{1}, Vector{1, 0}), DataError);
}

TEST(Cosine, ScaleInvariance) {
  testing::Rng rng(70);
  for (int i = 0; i < 100; ++i) {
    const Vector u = testing::RandomVector(13, rng);
    const Vector v = testing::RandomVector(13, rng);
    const double c = std::exp(std::uniform_real_distribution<double>(-5, 5)(rng));
    Vector cu = u;
    for (double& x : cu) x *= c;
    EXPECT_NEAR(cosine(u, v), cosine(cu, v), 1e-12);
  }
}

std::vector<SimilarityPair> GoldPairs(const Vector& gold) {
  std::vector<SimilarityPair> p;
  for (double g : gold) p.push_back({g, "", ""});
  return p;
}

// Unit vectors whose cosine with e1 is exactly `c`.
Vector AtCosine(double c) { return {c, std::sqrt(1.0 - c * c)}; }

TEST(StsEval, PerfectAndReversedAgreement) {
  const Vector gold = {0.0, 1.0, 2.5, 4.0, 5.0};
  std::vector<Vector> a(gold.size(), Vector{1.0, 0.0});
  std::vector<Vector> b;
  for (double g : gold) b.push_back(AtCosine(g / 5.0));
  EXPECT_NEAR(sts_eval(GoldPairs(gold), a, b), 100.0, 1e-10);
  std::vector<Vector> rev;
  for (double g : gold) rev.push_back(AtCosine(1.0 - g / 5.0));
  EXPECT_NEAR(sts_eval(GoldPairs(gold), a, rev), -100.0, 1e-10);
}

TEST(StsEval, HandPearson) {
  // Cosines 0.1, 0.3, 0.2, 0.4 against gold 1..4: deviations give 0.8.
  const Vector gold = {1, 2, 3, 4};
  std::vector<Vector> a(4, Vector{1.0, 0.0});
  std::vector<Vector> b = {AtCosine(0.1), AtCosine(0.3), AtCosine(0.2), AtCosine(0.4)};
  EXPECT_NEAR(sts_eval(GoldPairs(gold), a, b), 80.0, 1e-10);
}

TEST(StsEval, AffineGoldTransformIsInvariant) {
  testing::Rng rng(71);
  std::vector<Vector> a;
  std::vector<Vector> b;
  Vector gold;
  for (int i = 0; i < 30; ++i) {
    a.push_back(testing::RandomVector(5, rng));
    b.push_back(testing::RandomVector(5, rng));
    gold.push_back(std::uniform_real_distribution<double>(0, 5)(rng));
  }
  const double base = sts_eval(GoldPairs(gold), a, b);
  Vector moved = gold;
  for (double& g : moved) g = 3.7 * g - 11.0;
  EXPECT_NEAR(sts_eval(GoldPairs(moved), a, b), base, 1e-10);
}

TEST(StsEval, ConstantGoldIsAnError) {
  std::vector<Vector> a(3, Vector{1.0, 0.0});
  std::vector<Vector> b = {AtCosine(0.1), AtCosine(0.5), AtCosine(0.9)};
  EXPECT_THROW(sts_eval(GoldPairs({2, 2, 2}), a, b), DataError);
}

TEST(AveragePrecision, Examples) {
  EXPECT_EQ(average_precision({}), 0.0);
  const bool first[] = {true, false, false};
  EXPECT_EQ(average_precision(first), 1.0);
  const bool second[] = {false, true};
  EXPECT_EQ(average_precision(second), 0.5);
  const bool none[] = {false, false};
  EXPECT_EQ(average_precision(none), 0.0);
  const bool mixed[] = {true, false, true, false, true};
  EXPECT_NEAR(average_precision(mixed), (1.0 + 2.0 / 3.0 + 3.0 / 5.0) / 3.0, 1e-15);
}

// A query and candidates placed at chosen cosines along a circle.
struct Fixture {
  std::vector<RankingQuery> queries;
  std::vector<Vector> query_embeds;
  std::vector<std::vector<Vector>> candidate_embeds;

  void Add(std::vector<std::pair<double, Relevance>> cands) {
    RankingQuery q{"q" + std::to_string(queries.size()), "", {}};
    std::vector<Vector> embeds;
    for (const auto& [cos, label] : cands) {
      q.candidates.push_back({"", label});
      embeds.push_back(AtCosine(cos));
    }
    queries.push_back(q);
    query_embeds.push_back({1.0, 0.0});
    candidate_embeds.push_back(embeds);
  }

  double Map() const { return map_eval(queries, query_embeds, candidate_embeds); }

  double BruteForce() const {
    double total = 0.0;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      // Selection sort by cosine, earliest index on ties.
      std::vector<bool> used(queries[qi].candidates.size(), false);
      std::vector<bool> flags;
      for (std::size_t step = 0; step < used.size(); ++step) {
        std::size_t best = used.size();
        double best_cos = -2.0;
        for (std::size_t c = 0; c < used.size(); ++c) {
          const double cs = cosine(query_embeds[qi], candidate_embeds[qi][c]);
          if (!used[c] && cs > best_cos) {
            best = c;
            best_cos = cs;
          }
        }
        used[best] = true;
        flags.push_back(queries[qi].candidates[best].label != Relevance::kIrrelevant);
      }
      total += BruteForceAp(flags);
    }
    return total / static_cast<double>(queries.size());
  }
};

constexpr Relevance P = Relevance::kPerfectMatch;
constexpr Relevance R = Relevance::kRelevant;
constexpr Relevance I = Relevance::kIrrelevant;

TEST(MapEval, RelevantFirstOfTen) {
  Fixture f;
  std::vector<std::pair<double, Relevance>> c = {{0.95, R}};
  for (int i = 0; i < 9; ++i) c.push_back({0.1 * i, I});
  f.Add(c);
  EXPECT_EQ(f.Map(), 1.0);
}

TEST(MapEval, SingleRelevantSecond) {
  Fixture f;
  f.Add({{0.2, I}, {0.1, P}, {0.05, I}});
  EXPECT_EQ(f.Map(), 0.5);
}

TEST(MapEval, ThreeMixedQueriesMatchBruteForce) {
  Fixture f;
  f.Add({{0.9, I}, {0.8, P}, {0.1, R}, {0.5, I}, {0.3, R}});
  f.Add({{0.2, R}, {0.7, R}, {0.4, I}});
  f.Add({{0.6, I}, {0.6, R}, {0.6, I}, {0.9, I}});  // ties keep input order
  const double want =
      ((1.0 / 2.0 + 2.0 / 4.0 + 3.0 / 5.0) / 3.0 + (1.0 + 2.0 / 3.0) / 2.0 +
       1.0 / 3.0) /
      3.0;
  EXPECT_NEAR(f.BruteForce(), want, 1e-15);
  EXPECT_NEAR(f.Map(), want, 1e-12);
}

TEST(MapEval, DegenerateFixtures) {
  Fixture all_irrelevant;
  all_irrelevant.Add({{0.3, I}, {0.9, I}});
  EXPECT_EQ(all_irrelevant.Map(), 0.0);

  Fixture single_relevant;
  single_relevant.Add({{0.4, P}});
  EXPECT_EQ(single_relevant.Map(), 1.0);

  Fixture single_irrelevant;
  single_irrelevant.Add({{0.4, I}});
  EXPECT_EQ(single_irrelevant.Map(), 0.0);
}

TEST(MapEval, MonotoneTransformOfScoresIsInvariant) {
  testing::Rng rng(72);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  Fixture f;
  Fixture g;
  for (int q = 0; q < 10; ++q) {
    std::vector<std::pair<double, Relevance>> a;
    std::vector<std::pair<double, Relevance>> b;
    for (int c = 0; c < 8; ++c) {
      const double x = u(rng);
      const Relevance label = c % 3 == 0 ? R : I;
      a.push_back({x, label});
      // Strictly increasing map of [-1, 1] into itself.
      b.push_back({std::tanh(2.0 * x) / std::tanh(2.0), label});
    }
    f.Add(a);
    g.Add(b);
  }
  EXPECT_NEAR(f.Map(), g.Map(), 1e-12);
  EXPECT_NEAR(f.Map(), f.BruteForce(), 1e-12);
}

}  // namespace
}  // namespace gem

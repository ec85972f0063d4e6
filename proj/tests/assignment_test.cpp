// Copyright 2026 The ecbm Authors
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

#include <gtest/gtest.h>

#include "ecbm/assignment.hpp"
#include "oracles.hpp"

namespace ecbm {
namespace {

Weight score_of(const WeightMatrix& w, const std::vector<std::optional<std::size_t>>& a) {
  Weight total = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r]) total += w(r, *a[r]);
  }
  return total;
}

TEST(Assignment, MatchesBruteForceIncludingTieBreak) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    // Small weight ranges force many ties.
    const WeightMatrix w = oracle::random_matrix(rng, 6, trial % 2 ? 3 : 20);
    const auto got = max_weight_assignment(w);
    const auto want = oracle::brute_force_matching(w);
    ASSERT_EQ(score_of(w, got), want.score) << "trial " << trial;
    ASSERT_EQ(got, want.assignment) << "trial " << trial;
  }
}

TEST(Assignment, IsOneToOneAndSkipsZeroPairs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightMatrix w = oracle::random_matrix(rng, 9, 2);
    const auto got = max_weight_assignment(w);
    std::vector<int> used(w.cols(), 0);
    for (std::size_t r = 0; r < got.size(); ++r) {
      if (!got[r]) continue;
      EXPECT_GT(w(r, *got[r]), 0);
      EXPECT_EQ(++used[*got[r]], 1);
    }
  }
}

TEST(Assignment, DegenerateShapes) {
  EXPECT_TRUE(max_weight_assignment(WeightMatrix(0, 0)).empty());
  const auto zero = max_weight_assignment(WeightMatrix(2, 3));
  EXPECT_FALSE(zero[0]);
  EXPECT_FALSE(zero[1]);
  EXPECT_THROW(WeightMatrix(1, 2, {1, -1}), InvalidArgument);
  EXPECT_THROW(WeightMatrix(1, 2, {1}), InvalidArgument);
}

TEST(Assignment, EqualWeightsPreferEarlierColumns) {
  const WeightMatrix w(2, 2, {5, 5, 5, 5});
  const auto got = max_weight_assignment(w);
  EXPECT_EQ(got[0], std::optional<std::size_t>(0));
  EXPECT_EQ(got[1], std::optional<std::size_t>(1));
}

TEST(Graph, TwoRecordExample) {
  const Corpus corpus = oracle::two_record_corpus();
  const BipartiteGraph g = build_graph(corpus);
  EXPECT_EQ(g.words, (std::vector<Word>{"w1", "w2", "w3"}));
  const auto& shape = corpus.schema;
  EXPECT_EQ(g.concepts, (std::vector<Concept>{shape.concept_named("shape", "triangle"),
                                              shape.concept_named("color", "red"),
                                              shape.concept_named("color", "blue")}));
  EXPECT_EQ(g.total_weight(), 8);
  EXPECT_EQ(g.max_weight(), 2);
  EXPECT_EQ(g.weight(1, 0), 2);  // w2 with triangle

  const TranslationMap t = max_weight_matching(g);
  EXPECT_EQ(t.bm_score(), 4);
  EXPECT_EQ(t.concept_for("w1"), shape.concept_named("color", "blue"));
  EXPECT_EQ(t.concept_for("w2"), shape.concept_named("shape", "triangle"));
  EXPECT_EQ(t.concept_for("w3"), shape.concept_named("color", "red"));
  EXPECT_TRUE(t.unmatched_words().empty());
  EXPECT_TRUE(t.unmatched_concepts().empty());
  EXPECT_DOUBLE_EQ(cbm_lower_bound(g, 4), 0.5);
  EXPECT_THROW(cbm_lower_bound(g, 0), InvalidArgument);
}

TEST(Graph, TotalWeightIsSumOfProducts) {
  std::mt19937_64 rng(5);
  const auto thing = builtin_schema("thing");
  for (int trial = 0; trial < 50; ++trial) {
    const Corpus c = oracle::random_corpus(thing, rng);
    Weight expected = 0;
    for (const auto& r : c.records) {
      expected += static_cast<Weight>(r.message.size() * r.phrase.size());
    }
    EXPECT_EQ(build_graph(c).total_weight(), expected);
  }
}

TEST(Graph, MatchingIsInvariantToRelabeling) {
  std::mt19937_64 rng(17);
  const auto shape = builtin_schema("shape");
  for (int trial = 0; trial < 30; ++trial) {
    Corpus c = oracle::random_corpus(shape, rng);
    const Weight before = max_weight_matching(build_graph(c)).bm_score();
    for (auto& r : c.records) {
      for (auto& w : r.message) w = "renamed_" + w + "_x";
    }
    EXPECT_EQ(max_weight_matching(build_graph(c)).bm_score(), before);
  }
}

}  // namespace
}  // namespace ecbm

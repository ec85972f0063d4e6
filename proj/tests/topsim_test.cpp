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

#include <cmath>

#include <gtest/gtest.h>

#include "ecbm/senders.hpp"
#include "ecbm/topsim.hpp"
#include "oracles.hpp"

namespace ecbm {
namespace {

TEST(Levenshtein, KnownDistances) {
  EXPECT_EQ(levenshtein(Message{"a", "b", "c"}, Message{"a", "b", "c"}), 0u);
  EXPECT_EQ(levenshtein(Message{}, Message{"a", "b"}), 2u);
  EXPECT_EQ(levenshtein(Message{"k", "i", "t"}, Message{"s", "i", "t", "s"}), 2u);
  // Tokens, not characters.
  EXPECT_EQ(levenshtein(Message{"ab"}, Message{"ac"}), 1u);
}

TEST(Ranks, TiesShareTheMean) {
  const std::vector<double> xs{3.0, 1.0, 3.0, 2.0};
  EXPECT_EQ(average_ranks(std::span<const double>(xs)),
            (std::vector<double>{3.5, 1.0, 3.5, 2.0}));
}

TEST(Spearman, KnownValues) {
  EXPECT_NEAR(spearman({1, 1, 2}, {1, 2, 3}), std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0, 1e-12);
  EXPECT_NEAR(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0, 1e-12);
  EXPECT_THROW(spearman({1, 1, 1}, {1, 2, 3}), InvalidArgument);
  EXPECT_THROW(spearman({1, 2, 3}, {5, 5, 5}), InvalidArgument);
  EXPECT_THROW(spearman({1}, {1}), InvalidArgument);
}

TEST(Pairwise, OrderAndValues) {
  const auto shape = builtin_schema("shape");
  const Corpus c = oracle::two_record_corpus();
  Corpus three = c;
  three.records.push_back(
      oracle::make_record(shape, 2, {"w9"}, {{"x_pos", "left"}}));
  const auto lists = pairwise_lists(std::span<const CorpusRecord>(three.records), shape);
  ASSERT_EQ(lists.edit.size(), 3u);
  EXPECT_EQ(lists.edit, (std::vector<std::uint32_t>{2, 2, 2}));
  EXPECT_NEAR(lists.ncos[0], -0.5, 1e-15);
  EXPECT_NEAR(lists.ncos[1], 0.0, 1e-15);
  EXPECT_NEAR(lists.ncos[2], 0.0, 1e-15);
}

TEST(TopSim, IndependentOfThreadCount) {
  const auto thing = builtin_schema("thing");
  const Corpus c = generate_corpus(thing, SenderModel::noisy(0.2), 3, 400, std::uint64_t{2});
  const double one = topsim(c, RuleEncoder{}, 1);
  for (std::size_t threads : {2u, 3u, 7u}) EXPECT_EQ(topsim(c, RuleEncoder{}, threads), one);
}

TEST(TopSim, PerfectSenderAllRulesIsOne) {
  const auto shape = builtin_schema("shape");
  const Corpus c = generate_corpus(shape, SenderModel::perfect(), 1, 1000, std::uint64_t{7});
  EXPECT_NEAR(topsim(c), 1.0, 1e-9);
}

TEST(TopSim, NoisierSendersScoreLower) {
  const auto thing = builtin_schema("thing");
  const double clean = topsim(
      generate_corpus(thing, SenderModel::perfect(), 3, 500, std::uint64_t{3}));
  const double noisy = topsim(
      generate_corpus(thing, SenderModel::noisy(0.5), 3, 500, std::uint64_t{3}));
  EXPECT_GT(clean, noisy);
}

TEST(TopSim, CustomEncoder) {
  struct ObjectIdEncoder {
    std::vector<double> operator()(const AttributeSchema& schema,
                                   const CorpusRecord& record) const {
      auto v = encode_rule(schema, record.phrase);
      v.push_back(1.0);
      return v;
    }
  };
  const auto shape = builtin_schema("shape");
  const Corpus c = generate_corpus(shape, SenderModel::perfect(), 2, 200, std::uint64_t{1});
  const double score = topsim(c, ObjectIdEncoder{});
  EXPECT_GT(score, 0.5);
}

TEST(TopSim, TooFewRecords) {
  const auto shape = builtin_schema("shape");
  Corpus c{shape, {oracle::make_record(shape, 0, {"a"}, {{"color", "red"}})}};
  EXPECT_THROW(topsim(c), InvalidArgument);
}

}  // namespace
}  // namespace ecbm

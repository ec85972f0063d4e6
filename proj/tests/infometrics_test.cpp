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

#include "ecbm/infometrics.hpp"
#include "ecbm/senders.hpp"
#include "oracles.hpp"

namespace ecbm {
namespace {

TEST(Entropy, KnownValues) {
  const std::vector<Count> fair{1, 1};
  EXPECT_NEAR(entropy(fair), std::log(2.0), 1e-15);
  const std::vector<Count> single{5, 0};
  EXPECT_EQ(entropy(single), 0.0);
  const std::vector<Count> empty{0};
  EXPECT_THROW(entropy(empty), InvalidArgument);
}

TEST(Contingency, FirstAppearanceOrder) {
  const auto t = contingency(oracle::two_record_corpus());
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.cols(), 2u);
  EXPECT_EQ(t(0, 0), 1);
  EXPECT_EQ(t(1, 1), 1);
  EXPECT_EQ(t(0, 1), 0);
  EXPECT_EQ(t.total(), 2);
}

TEST(ExpectedMi, TwoSingletonsEachSide) {
  // Both arrangements of two singletons are one-to-one, so I = ln 2 always.
  const ContingencyTable t(2, 2, {1, 0, 0, 1});
  EXPECT_NEAR(expected_mi(t), std::log(2.0), 1e-12);
  EXPECT_NEAR(oracle::exhaustive_emi(t), std::log(2.0), 1e-12);
}

TEST(ExpectedMi, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const ContingencyTable t = oracle::random_table(rng, 9);
    EXPECT_NEAR(expected_mi(t), oracle::exhaustive_emi(t), 1e-10) << "trial " << trial;
  }
}

TEST(ExpectedMi, SymmetricUnderTranspose) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const ContingencyTable t = oracle::random_table(rng, 40);
    EXPECT_NEAR(expected_mi(t), expected_mi(t.transposed()), 1e-12);
  }
}

TEST(MutualInformation, MatchesLabelDefinition) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const ContingencyTable t = oracle::random_table(rng, 30);
    std::vector<int> x, y;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      for (std::size_t j = 0; j < t.cols(); ++j) {
        for (Count k = 0; k < t(i, j); ++k) {
          x.push_back(static_cast<int>(i));
          y.push_back(static_cast<int>(j));
        }
      }
    }
    EXPECT_NEAR(mutual_information(t), oracle::label_mi(x, y), 1e-12);
    const auto s = ami_summary(t);
    EXPECT_NEAR(s.h_messages_given_phrases, s.h_messages - s.mi, 1e-12);
  }
}

TEST(Ami, IdenticalPartitionsScoreOne) {
  const ContingencyTable t(3, 3, {0, 4, 0, 2, 0, 0, 0, 0, 7});
  EXPECT_EQ(ami(t), 1.0);
  const ContingencyTable single(1, 1, {5});
  EXPECT_EQ(ami(single), 1.0);
}

TEST(Ami, ConstantMessageScoresZero) {
  // A single repeated message says nothing about the phrase.
  const ContingencyTable t(1, 3, {2, 2, 2});
  EXPECT_EQ(ami(t), 0.0);
}

TEST(Ami, PerfectSenderCanonicalOrder) {
  const auto thing = builtin_schema("thing");
  const Corpus c = generate_corpus(thing, SenderModel::perfect(), 3, 1000, std::uint64_t{1});
  EXPECT_EQ(ami(contingency(c)), 1.0);
}

TEST(Ami, RandomSenderNearZero) {
  const auto shape = builtin_schema("shape");
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Corpus c = generate_corpus(shape, SenderModel::random(26), 1, 1000, seed);
    EXPECT_LE(std::abs(ami(contingency(c))), 0.05);
  }
}

}  // namespace
}  // namespace ecbm

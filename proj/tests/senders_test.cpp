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

#include <set>

#include <gtest/gtest.h>

#include "ecbm/corpus.hpp"
#include "ecbm/senders.hpp"

namespace ecbm {
namespace {

std::set<Word> vocabulary_of(const Corpus& corpus) {
  std::set<Word> words;
  for (const auto& r : corpus.records) words.insert(r.message.begin(), r.message.end());
  return words;
}

TEST(SenderModel, ParsesGrammar) {
  EXPECT_EQ(SenderModel::parse("perfect"), SenderModel::perfect());
  EXPECT_EQ(SenderModel::parse("synonym:3"), SenderModel::synonym(3));
  EXPECT_EQ(SenderModel::parse("ambiguous:2,shuffled"),
            SenderModel::ambiguous(2, WordOrder::kShuffled));
  EXPECT_EQ(SenderModel::parse("random:26"), SenderModel::random(26));
  EXPECT_EQ(SenderModel::parse("noisy:0.25").epsilon, 0.25);
  for (const char* bad : {"", "perfect:1", "synonym", "synonym:1", "ambiguous:x",
                          "random:0", "noisy:1.5", "noisy:0", "bogus", "perfect,sorted"}) {
    EXPECT_THROW(SenderModel::parse(bad), InvalidArgument) << bad;
  }
}

TEST(Senders, SameSeedSameCorpus) {
  const auto thing = builtin_schema("thing");
  const auto model = SenderModel::parse("noisy:0.3,shuffled");
  EXPECT_EQ(corpus_to_string(generate_corpus(thing, model, 3, 300, std::uint64_t{7})),
            corpus_to_string(generate_corpus(thing, model, 3, 300, std::uint64_t{7})));
  EXPECT_NE(corpus_to_string(generate_corpus(thing, model, 3, 300, std::uint64_t{7})),
            corpus_to_string(generate_corpus(thing, model, 3, 300, std::uint64_t{8})));
}

TEST(Senders, PerfectIsOneWordPerConcept) {
  const auto shape = builtin_schema("shape");
  const Corpus c = generate_corpus(shape, SenderModel::perfect(), 2, 500, std::uint64_t{1});
  ASSERT_EQ(c.records.size(), 500u);
  for (std::size_t i = 0; i < c.records.size(); ++i) {
    const auto& r = c.records[i];
    EXPECT_EQ(r.id, i);
    ASSERT_EQ(r.message.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(r.message[k], vocabulary_word(shape.concept_index(r.phrase.concepts()[k])));
    }
  }
}

TEST(Senders, AmbiguousVocabularySizes) {
  const auto thing = builtin_schema("thing");
  const Corpus c =
      generate_corpus(thing, SenderModel::ambiguous(2), 5, 2000, std::uint64_t{3});
  EXPECT_EQ(vocabulary_of(c).size(), 25u);
}

TEST(Senders, SynonymWordsStayInTheirConcept) {
  const auto shape = builtin_schema("shape");
  const Corpus c = generate_corpus(shape, SenderModel::synonym(3), 1, 2000, std::uint64_t{2});
  EXPECT_EQ(vocabulary_of(c).size(), 51u);
  for (const auto& r : c.records) {
    const std::size_t index = shape.concept_index(r.phrase.concepts()[0]);
    const std::size_t word = std::stoul(r.message[0].substr(1));
    EXPECT_EQ(word / 3, index);
  }
}

TEST(Senders, RandomUsesBoundedVocabulary) {
  const auto shape = builtin_schema("shape");
  const Corpus c = generate_corpus(shape, SenderModel::random(5), 3, 500, std::uint64_t{2});
  const auto words = vocabulary_of(c);
  EXPECT_LE(words.size(), 5u);
  for (const auto& r : c.records) EXPECT_EQ(r.message.size(), 3u);
}

TEST(Senders, ShuffledKeepsTheMultiset) {
  const auto thing = builtin_schema("thing");
  const Corpus c = generate_corpus(thing, SenderModel::perfect(WordOrder::kShuffled), 4, 100,
                                   std::uint64_t{5});
  bool any_reordered = false;
  for (const auto& r : c.records) {
    Message canonical;
    for (const Concept& k : r.phrase.concepts()) {
      canonical.push_back(vocabulary_word(thing.concept_index(k)));
    }
    any_reordered |= canonical != r.message;
    auto sorted = r.message;
    std::sort(sorted.begin(), sorted.end());
    std::sort(canonical.begin(), canonical.end());
    EXPECT_EQ(sorted, canonical);
  }
  EXPECT_TRUE(any_reordered);
}

TEST(Senders, RejectsBadArguments) {
  const auto shape = builtin_schema("shape");
  EXPECT_THROW(generate_corpus(shape, SenderModel::perfect(), 5, 10, std::uint64_t{1}),
               InvalidArgument);
  EXPECT_THROW(generate_corpus(shape, SenderModel::perfect(), 1, 0, std::uint64_t{1}),
               InvalidArgument);
}

}  // namespace
}  // namespace ecbm

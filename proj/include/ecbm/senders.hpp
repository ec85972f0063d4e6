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

#ifndef ECBM_SENDERS_HPP_
#define ECBM_SENDERS_HPP_

// Synthetic senders whose compositionality is known by construction. They
// stand in for trained agents when checking the metrics:
//
//   perfect        one word per concept
//   synonym:K      K interchangeable words per concept
//   ambiguous:G    concepts grouped G at a time, one word per group
//   random:V       words uniform over a V-word vocabulary, unrelated to meaning
//   noisy:EPS      perfect, then each word replaced by a uniform vocabulary
//                  word with probability EPS
//
// Any model may carry a ",shuffled" suffix, which permutes every message
// uniformly instead of emitting words in schema concept order. Messages always
// have as many words as the rule has concepts.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ecbm/corpus.hpp"
#include "ecbm/error.hpp"
#include "ecbm/random.hpp"
#include "ecbm/world.hpp"

namespace ecbm {

enum class SenderKind { kPerfect, kSynonym, kAmbiguous, kRandom, kNoisy };
enum class WordOrder { kCanonical, kShuffled };

struct SenderModel {
  SenderKind kind = SenderKind::kPerfect;
  // Synonyms per concept, concepts per group or vocabulary size, depending on
  // `kind`; unused for perfect and noisy.
  std::size_t parameter = 0;
  double epsilon = 0.0;
  WordOrder order = WordOrder::kCanonical;

  static SenderModel perfect(WordOrder order = WordOrder::kCanonical) {
    return SenderModel{SenderKind::kPerfect, 0, 0.0, order};
  }
  static SenderModel synonym(std::size_t k, WordOrder order = WordOrder::kCanonical) {
    return validated({SenderKind::kSynonym, k, 0.0, order});
  }
  static SenderModel ambiguous(std::size_t g, WordOrder order = WordOrder::kCanonical) {
    return validated({SenderKind::kAmbiguous, g, 0.0, order});
  }
  static SenderModel random(std::size_t vocab, WordOrder order = WordOrder::kCanonical) {
    return validated({SenderKind::kRandom, vocab, 0.0, order});
  }
  static SenderModel noisy(double eps, WordOrder order = WordOrder::kCanonical) {
    return validated({SenderKind::kNoisy, 0, eps, order});
  }

  static SenderModel validated(SenderModel model) {
    switch (model.kind) {
      case SenderKind::kPerfect:
        break;
      case SenderKind::kSynonym:
        if (model.parameter < 2) throw InvalidArgument("synonym:K needs K >= 2");
        break;
      case SenderKind::kAmbiguous:
        if (model.parameter < 2) throw InvalidArgument("ambiguous:G needs G >= 2");
        break;
      case SenderKind::kRandom:
        if (model.parameter < 1) throw InvalidArgument("random:V needs V >= 1");
        break;
      case SenderKind::kNoisy:
        if (!(model.epsilon > 0.0 && model.epsilon < 1.0)) {
          throw InvalidArgument("noisy:EPS needs 0 < EPS < 1");
        }
        break;
    }
    return model;
  }

  // perfect | synonym:K | ambiguous:G | random:V | noisy:EPS, optionally
  // followed by ",shuffled".
  static SenderModel parse(std::string_view text) {
    WordOrder order = WordOrder::kCanonical;
    if (auto comma = text.find(','); comma != std::string_view::npos) {
      if (text.substr(comma + 1) != "shuffled") {
        throw InvalidArgument("unknown sender modifier \"" +
                              std::string(text.substr(comma + 1)) +
                              "\" (only \"shuffled\" is supported)");
      }
      order = WordOrder::kShuffled;
      text = text.substr(0, comma);
    }
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const std::string_view arg =
        colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto need_arg = [&]() {
      if (colon == std::string_view::npos || arg.empty()) {
        throw InvalidArgument("sender \"" + std::string(name) + "\" needs a parameter");
      }
    };
    auto as_count = [&]() -> std::size_t {
      need_arg();
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
      if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
        throw InvalidArgument("bad integer \"" + std::string(arg) + "\" in sender model");
      }
      return value;
    };
    if (name == "perfect") {
      if (colon != std::string_view::npos) {
        throw InvalidArgument("sender \"perfect\" takes no parameter");
      }
      return perfect(order);
    }
    if (name == "synonym") return synonym(as_count(), order);
    if (name == "ambiguous") return ambiguous(as_count(), order);
    if (name == "random") return random(as_count(), order);
    if (name == "noisy") {
      need_arg();
      std::size_t used = 0;
      double eps = 0.0;
      try {
        eps = std::stod(std::string(arg), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != arg.size()) {
        throw InvalidArgument("bad probability \"" + std::string(arg) + "\" in sender model");
      }
      return noisy(eps, order);
    }
    throw InvalidArgument("unknown sender model \"" + std::string(text) + "\"");
  }

  friend bool operator==(const SenderModel&, const SenderModel&) = default;
};

// Word lists per concept, indexed by schema concept position.
class Lexicon {
 public:
  explicit Lexicon(std::vector<std::vector<Word>> words) : words_(std::move(words)) {}

  std::span<const Word> words_for(const AttributeSchema& schema, Concept c) const {
    return words_.at(schema.concept_index(c));
  }
  std::size_t concept_count() const { return words_.size(); }

  std::vector<Word> vocabulary() const {
    std::vector<Word> vocab;
    for (const auto& list : words_) {
      for (const Word& w : list) {
        if (std::find(vocab.begin(), vocab.end(), w) == vocab.end()) vocab.push_back(w);
      }
    }
    return vocab;
  }

 private:
  std::vector<std::vector<Word>> words_;
};

inline Word vocabulary_word(std::size_t index) { return "w" + std::to_string(index); }

// Lexicon of a meaning-bearing sender. Random senders have none.
inline Lexicon make_lexicon(const AttributeSchema& schema, const SenderModel& model) {
  const std::size_t n = schema.concept_count();
  std::vector<std::vector<Word>> words(n);
  for (std::size_t c = 0; c < n; ++c) {
    switch (model.kind) {
      case SenderKind::kPerfect:
      case SenderKind::kNoisy:
        words[c] = {vocabulary_word(c)};
        break;
      case SenderKind::kSynonym:
        for (std::size_t s = 0; s < model.parameter; ++s) {
          words[c].push_back(vocabulary_word(c * model.parameter + s));
        }
        break;
      case SenderKind::kAmbiguous:
        words[c] = {vocabulary_word(c / model.parameter)};
        break;
      case SenderKind::kRandom:
        throw InvalidArgument("random senders have no lexicon");
    }
  }
  return Lexicon(std::move(words));
}

// Draws rules uniformly from enumerate_rules(schema, rule_length) and renders
// one message per rule. Record ids are 0..n_samples-1.
inline Corpus generate_corpus(const AttributeSchema& schema, const SenderModel& model,
                              std::size_t rule_length, std::size_t n_samples, Rng& rng) {
  if (n_samples < 1) throw InvalidArgument("need at least one sample");
  SenderModel::validated(model);
  const std::vector<LabelingRule> rules = enumerate_rules(schema, rule_length);

  std::optional<Lexicon> lexicon;
  std::vector<Word> noise_vocabulary;
  if (model.kind != SenderKind::kRandom) lexicon = make_lexicon(schema, model);
  if (model.kind == SenderKind::kNoisy) noise_vocabulary = lexicon->vocabulary();

  Corpus corpus{schema, {}};
  corpus.records.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    CorpusRecord record;
    record.id = i;
    record.phrase = rules[uniform_index(rng, rules.size())];
    record.message.reserve(rule_length);
    for (const Concept& c : record.phrase.concepts()) {
      switch (model.kind) {
        case SenderKind::kPerfect:
        case SenderKind::kAmbiguous:
          record.message.push_back(lexicon->words_for(schema, c).front());
          break;
        case SenderKind::kSynonym: {
          auto synonyms = lexicon->words_for(schema, c);
          record.message.push_back(synonyms[uniform_index(rng, synonyms.size())]);
          break;
        }
        case SenderKind::kRandom:
          record.message.push_back(vocabulary_word(uniform_index(rng, model.parameter)));
          break;
        case SenderKind::kNoisy:
          if (uniform_unit(rng) < model.epsilon) {
            record.message.push_back(
                noise_vocabulary[uniform_index(rng, noise_vocabulary.size())]);
          } else {
            record.message.push_back(lexicon->words_for(schema, c).front());
          }
          break;
      }
    }
    if (model.order == WordOrder::kShuffled) {
      shuffle(std::span<Word>(record.message), rng);
    }
    corpus.records.push_back(std::move(record));
  }
  return corpus;
}

inline Corpus generate_corpus(const AttributeSchema& schema, const SenderModel& model,
                              std::size_t rule_length, std::size_t n_samples,
                              std::uint64_t seed) {
  Rng rng(seed);
  return generate_corpus(schema, model, rule_length, n_samples, rng);
}

}  // namespace ecbm

#endif  // ECBM_SENDERS_HPP_

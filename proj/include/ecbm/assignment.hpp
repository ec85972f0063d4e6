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

#ifndef ECBM_ASSIGNMENT_HPP_
#define ECBM_ASSIGNMENT_HPP_

// Word <-> concept co-occurrence graph and its maximum-weight one-to-one
// matching.
//
// The solver works on exact integer weights. A rectangular matrix is padded
// to a square one with zero entries, solved with the O(n^3) shortest
// augmenting path form of the Hungarian method, and the optimal dual is then
// used to pick, among all optimal matchings, the lexicographically smallest
// one: row 0 takes the smallest column it can take in any optimal matching,
// then row 1, and so on, with "unmatched" ranked after every column.
// Zero-weight pairs count as unmatched and are never reported.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecbm/corpus.hpp"
#include "ecbm/world.hpp"

namespace ecbm {

using Weight = std::int64_t;

// Dense row-major matrix of non-negative weights.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  WeightMatrix(std::size_t rows, std::size_t cols, std::vector<Weight> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
      throw InvalidArgument("weight matrix data does not match its shape");
    }
    for (Weight w : data_) {
      if (w < 0) throw InvalidArgument("negative weight");
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Weight operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Weight& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Weight> data() const { return data_; }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Weight> data_;
};

// Row -> column of a maximum-weight matching; rows left unmatched (or matched
// only through zero weight) hold nullopt. See the file comment for the
// tie-breaking rule.
inline std::vector<std::optional<std::size_t>> max_weight_assignment(
    const WeightMatrix& weights) {
  const std::size_t nr = weights.rows();
  const std::size_t nc = weights.cols();
  const std::size_t n = std::max(nr, nc);
  std::vector<std::optional<std::size_t>> result(nr);
  if (n == 0) return result;

  auto cost = [&](std::size_t i, std::size_t j) -> Weight {
    return (i < nr && j < nc) ? -weights(i, j) : 0;
  };

  // Hungarian method, 1-based: u, v are dual potentials with
  // u[i] + v[j] <= cost(i, j) and equality on matched pairs.
  constexpr Weight kInf = std::numeric_limits<Weight>::max() / 4;
  std::vector<Weight> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<Weight> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      Weight delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Weight reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  // Every optimal perfect matching of the padded problem uses only tight
  // edges of this dual, and every perfect matching of tight edges is optimal.
  std::vector<char> tight(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tight[i * n + j] = (u[i + 1] + v[j + 1] == cost(i, j)) ? 1 : 0;
    }
  }
  auto positive = [&](std::size_t i, std::size_t j) {
    return i < nr && j < nc && weights(i, j) > 0;
  };

  std::vector<std::size_t> row_of(n), col_of(n);
  for (std::size_t j = 1; j <= n; ++j) {
    row_of[j - 1] = owner[j] - 1;
    col_of[owner[j] - 1] = j - 1;
  }

  enum class RowState : char { kFree, kZeroOnly, kFixed };
  std::vector<RowState> state(n, RowState::kFree);
  std::vector<char> col_removed(n, 0);
  auto allowed = [&](std::size_t i, std::size_t j) {
    if (!tight[i * n + j] || col_removed[j]) return false;
    switch (state[i]) {
      case RowState::kFree: return true;
      case RowState::kZeroOnly: return !positive(i, j);
      case RowState::kFixed: return false;
    }
    return false;
  };

  // Looks for an alternating cycle that hands column `want` to row `start`:
  // start takes want, want's owner takes another allowed column, ..., and the
  // last row takes the column start used to own. Rotates the matching along
  // the cycle when one exists.
  std::vector<std::size_t> via(n), pred(n), queue;
  std::vector<char> seen(n);
  auto reroute = [&](std::size_t start, std::size_t want) -> bool {
    const std::size_t target = col_of[start];
    std::fill(seen.begin(), seen.end(), 0);
    queue.clear();
    seen[start] = 1;
    const std::size_t first = row_of[want];
    seen[first] = 1;
    via[first] = want;
    pred[first] = start;
    queue.push_back(first);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t r = queue[head];
      for (std::size_t c = 0; c < n; ++c) {
        if (c == col_of[r] || !allowed(r, c)) continue;
        if (c == target) {
          std::size_t row = r;
          std::size_t col = c;
          while (row != start) {
            const std::size_t owned = via[row];
            col_of[row] = col;
            row_of[col] = row;
            col = owned;
            row = pred[row];
          }
          col_of[start] = col;
          row_of[col] = start;
          return true;
        }
        const std::size_t next = row_of[c];
        if (seen[next]) continue;
        seen[next] = 1;
        via[next] = c;
        pred[next] = r;
        queue.push_back(next);
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      if (!positive(i, j) || !tight[i * n + j] || col_removed[j]) continue;
      if (col_of[i] == j || reroute(i, j)) {
        state[i] = RowState::kFixed;
        col_removed[j] = 1;
        result[i] = j;
        break;
      }
    }
    // A row whose current partner is positive always fixes above, so a row
    // reaching this point already sits on a zero-weight column.
    if (state[i] != RowState::kFixed) state[i] = RowState::kZeroOnly;
  }
  return result;
}

struct BipartiteGraph {
  std::vector<Word> words;        // first-appearance order
  std::vector<Concept> concepts;  // schema order
  WeightMatrix weights;           // words x concepts

  Weight weight(std::size_t word, std::size_t concept_index) const {
    return weights(word, concept_index);
  }
  Weight total_weight() const {
    Weight total = 0;
    for (Weight w : weights.data()) total += w;
    return total;
  }
  Weight max_weight() const {
    Weight best = 0;
    for (Weight w : weights.data()) best = std::max(best, w);
    return best;
  }
  std::optional<std::size_t> word_index(const Word& word) const {
    auto it = std::find(words.begin(), words.end(), word);
    if (it == words.end()) return std::nullopt;
    return static_cast<std::size_t>(it - words.begin());
  }
  std::optional<std::size_t> concept_position(Concept c) const {
    auto it = std::lower_bound(concepts.begin(), concepts.end(), c);
    if (it == concepts.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - concepts.begin());
  }
};

// Every (word occurrence, concept) pair of a record adds one to that edge, so
// the total weight is the sum over records of |message| * |phrase|.
inline BipartiteGraph build_graph(std::span<const CorpusRecord> records) {
  BipartiteGraph graph;
  std::unordered_map<Word, std::size_t> word_ids;
  std::vector<Concept> concepts;
  for (const CorpusRecord& record : records) {
    for (const Word& w : record.message) {
      if (word_ids.emplace(w, graph.words.size()).second) graph.words.push_back(w);
    }
    for (const Concept& c : record.phrase.concepts()) concepts.push_back(c);
  }
  std::sort(concepts.begin(), concepts.end());
  concepts.erase(std::unique(concepts.begin(), concepts.end()), concepts.end());
  graph.concepts = std::move(concepts);
  graph.weights = WeightMatrix(graph.words.size(), graph.concepts.size());
  for (const CorpusRecord& record : records) {
    for (const Word& w : record.message) {
      const std::size_t row = word_ids.at(w);
      for (const Concept& c : record.phrase.concepts()) {
        graph.weights(row, *graph.concept_position(c)) += 1;
      }
    }
  }
  return graph;
}

inline BipartiteGraph build_graph(const Corpus& corpus) {
  return build_graph(std::span<const CorpusRecord>(corpus.records));
}

struct MatchedPair {
  Word word;
  Concept meaning;
  Weight weight = 0;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

// One-to-one word <-> concept pairs of the best match, plus the nodes it left
// out. Pairs are listed in graph word order.
class TranslationMap {
 public:
  TranslationMap() = default;
  TranslationMap(std::vector<MatchedPair> pairs, std::vector<Word> unmatched_words,
                 std::vector<Concept> unmatched_concepts)
      : pairs_(std::move(pairs)),
        unmatched_words_(std::move(unmatched_words)),
        unmatched_concepts_(std::move(unmatched_concepts)) {
    for (const MatchedPair& pair : pairs_) {
      bm_score_ += pair.weight;
      by_word_.emplace(pair.word, pair.meaning);
      matched_concepts_.push_back(pair.meaning);
    }
    std::sort(matched_concepts_.begin(), matched_concepts_.end());
  }

  std::span<const MatchedPair> pairs() const { return pairs_; }
  std::span<const Word> unmatched_words() const { return unmatched_words_; }
  std::span<const Concept> unmatched_concepts() const { return unmatched_concepts_; }
  Weight bm_score() const { return bm_score_; }

  std::optional<Concept> concept_for(const Word& word) const {
    auto it = by_word_.find(word);
    if (it == by_word_.end()) return std::nullopt;
    return it->second;
  }
  bool is_matched(Concept c) const {
    return std::binary_search(matched_concepts_.begin(), matched_concepts_.end(), c);
  }

  friend bool operator==(const TranslationMap& a, const TranslationMap& b) {
    return a.pairs_ == b.pairs_ && a.unmatched_words_ == b.unmatched_words_ &&
           a.unmatched_concepts_ == b.unmatched_concepts_;
  }

 private:
  std::vector<MatchedPair> pairs_;
  std::vector<Word> unmatched_words_;
  std::vector<Concept> unmatched_concepts_;
  Weight bm_score_ = 0;
  std::unordered_map<Word, Concept> by_word_;
  std::vector<Concept> matched_concepts_;
};

inline TranslationMap max_weight_matching(const BipartiteGraph& graph) {
  const auto assignment = max_weight_assignment(graph.weights);
  std::vector<MatchedPair> pairs;
  std::vector<Word> unmatched_words;
  std::vector<char> concept_used(graph.concepts.size(), 0);
  for (std::size_t w = 0; w < graph.words.size(); ++w) {
    if (assignment[w]) {
      const std::size_t c = *assignment[w];
      pairs.push_back({graph.words[w], graph.concepts[c], graph.weights(w, c)});
      concept_used[c] = 1;
    } else {
      unmatched_words.push_back(graph.words[w]);
    }
  }
  std::vector<Concept> unmatched_concepts;
  for (std::size_t c = 0; c < graph.concepts.size(); ++c) {
    if (!concept_used[c]) unmatched_concepts.push_back(graph.concepts[c]);
  }
  return TranslationMap(std::move(pairs), std::move(unmatched_words),
                        std::move(unmatched_concepts));
}

// Heaviest single edge over the normaliser: no best match can score lower.
inline double cbm_lower_bound(const BipartiteGraph& graph, Weight q) {
  if (q <= 0) throw InvalidArgument("normaliser Q must be positive");
  return static_cast<double>(graph.max_weight()) / static_cast<double>(q);
}

}  // namespace ecbm

#endif  // ECBM_ASSIGNMENT_HPP_

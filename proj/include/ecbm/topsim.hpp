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

#ifndef ECBM_TOPSIM_HPP_
#define ECBM_TOPSIM_HPP_

// Topographic similarity: Spearman correlation between token-level edit
// distances of messages and negative cosine similarities of meaning
// encodings, over all record pairs i < j. Both lists are distance-like, so a
// topographically aligned corpus scores positive.
//
// The meaning side defaults to the multi-hot encoding of each record's
// labeling rule; any callable (schema, record) -> vector<double> can replace
// it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

#include "ecbm/corpus.hpp"
#include "ecbm/error.hpp"
#include "ecbm/parallel.hpp"
#include "ecbm/world.hpp"

namespace ecbm {

// Unit-cost insert/delete/substitute distance between two sequences.
template <typename T>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[b.size()];
}

inline std::size_t levenshtein(const Message& a, const Message& b) {
  return levenshtein(std::span<const Word>(a), std::span<const Word>(b));
}

struct RuleEncoder {
  std::vector<double> operator()(const AttributeSchema& schema,
                                 const CorpusRecord& record) const {
    return encode_rule(schema, record.phrase);
  }
};

struct PairwiseLists {
  std::vector<std::uint32_t> edit;
  std::vector<double> ncos;
};

// Position of pair (i, j), i < j, in row-major upper-triangle order.
inline std::size_t pair_offset(std::size_t n, std::size_t i) {
  return i * n - i * (i + 1) / 2;
}

template <typename Encoder = RuleEncoder>
PairwiseLists pairwise_lists(std::span<const CorpusRecord> records,
                             const AttributeSchema& schema,
                             const Encoder& encoder = Encoder{},
                             std::size_t threads = thread_count()) {
  const std::size_t n = records.size();
  if (n < 2) throw InvalidArgument("pairwise lists need at least two records");

  // Intern tokens so the edit-distance kernel compares integers.
  std::unordered_map<Word, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> messages(n);
  std::vector<std::vector<double>> encodings(n);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Word& w : records[i].message) {
      auto id = ids.emplace(w, static_cast<std::uint32_t>(ids.size())).first->second;
      messages[i].push_back(id);
    }
    encodings[i] = encoder(schema, records[i]);
    double sq = 0.0;
    for (double x : encodings[i]) sq += x * x;
    norms[i] = std::sqrt(sq);
    if (norms[i] == 0.0) throw InvalidArgument("zero meaning encoding");
    if (encodings[i].size() != encodings[0].size()) {
      throw InvalidArgument("meaning encodings differ in dimension");
    }
  }

  const std::size_t total = n * (n - 1) / 2;
  PairwiseLists lists;
  lists.edit.resize(total);
  lists.ncos.resize(total);
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    // Row containing pair `begin`.
    std::size_t lo = 0, hi = n - 1;
    while (lo + 1 < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (pair_offset(n, mid) <= begin) lo = mid; else hi = mid;
    }
    std::size_t i = lo;
    std::size_t j = i + 1 + (begin - pair_offset(n, i));
    for (std::size_t k = begin; k < end; ++k) {
      lists.edit[k] = static_cast<std::uint32_t>(levenshtein(
          std::span<const std::uint32_t>(messages[i]),
          std::span<const std::uint32_t>(messages[j])));
      const auto& x = encodings[i];
      const auto& y = encodings[j];
      double dot = 0.0;
      for (std::size_t d = 0; d < x.size(); ++d) dot += x[d] * y[d];
      lists.ncos[k] = -dot / (norms[i] * norms[j]);
      if (++j == n) {
        ++i;
        j = i + 1;
      }
    }
  });
  return lists;
}

// Ranks starting at 1; tied values share the mean of their rank range.
template <typename T>
std::vector<double> average_ranks(std::span<const T> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t start = 0; start < order.size();) {
    std::size_t stop = start + 1;
    while (stop < order.size() && values[order[stop]] == values[order[start]]) ++stop;
    const double rank = 0.5 * static_cast<double>(start + 1 + stop);
    for (std::size_t k = start; k < stop; ++k) ranks[order[k]] = rank;
    start = stop;
  }
  return ranks;
}

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw InvalidArgument("correlation needs two equal-length lists of >= 2 values");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = xs[k] - mx;
    const double dy = ys[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw InvalidArgument("correlation is undefined for a constant list");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

template <typename T, typename U>
double spearman(std::span<const T> xs, std::span<const U> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw InvalidArgument("spearman needs two equal-length lists of >= 2 values");
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  return spearman(std::span<const double>(xs), std::span<const double>(ys));
}

template <typename Encoder = RuleEncoder>
double topsim(std::span<const CorpusRecord> records, const AttributeSchema& schema,
              const Encoder& encoder = Encoder{}, std::size_t threads = thread_count()) {
  const PairwiseLists lists = pairwise_lists(records, schema, encoder, threads);
  return spearman(std::span<const std::uint32_t>(lists.edit),
                  std::span<const double>(lists.ncos));
}

template <typename Encoder = RuleEncoder>
double topsim(const Corpus& corpus, const Encoder& encoder = Encoder{},
              std::size_t threads = thread_count()) {
  return topsim(std::span<const CorpusRecord>(corpus.records), corpus.schema, encoder,
                threads);
}

}  // namespace ecbm

#endif  // ECBM_TOPSIM_HPP_

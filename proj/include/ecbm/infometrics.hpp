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

#ifndef ECBM_INFOMETRICS_HPP_
#define ECBM_INFOMETRICS_HPP_

// Information-theoretic agreement between the message partition and the
// phrase partition of a corpus. All quantities are in nats.
//
// AMI uses max-normalisation:
//   AMI = (I - E[I]) / (max(H(M), H(L)) - E[I])
// with E[I] the exact expectation of I over all tables sharing the observed
// marginals (hypergeometric / permutation model).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ecbm/corpus.hpp"
#include "ecbm/error.hpp"

namespace ecbm {

using Count = std::int64_t;

class ContingencyTable {
 public:
  ContingencyTable() = default;
  ContingencyTable(std::size_t rows, std::size_t cols, std::vector<Count> counts)
      : rows_(rows), cols_(cols), counts_(std::move(counts)),
        row_sums_(rows, 0), col_sums_(cols, 0) {
    if (counts_.size() != rows * cols) {
      throw InvalidArgument("contingency counts do not match the table shape");
    }
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const Count n = counts_[i * cols + j];
        if (n < 0) throw InvalidArgument("negative contingency count");
        row_sums_[i] += n;
        col_sums_[j] += n;
        total_ += n;
      }
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Count operator()(std::size_t i, std::size_t j) const { return counts_[i * cols_ + j]; }
  std::span<const Count> counts() const { return counts_; }
  std::span<const Count> row_sums() const { return row_sums_; }
  std::span<const Count> col_sums() const { return col_sums_; }
  Count total() const { return total_; }

  ContingencyTable transposed() const {
    std::vector<Count> t(counts_.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = counts_[i * cols_ + j];
    }
    return ContingencyTable(cols_, rows_, std::move(t));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Count> counts_;
  std::vector<Count> row_sums_;
  std::vector<Count> col_sums_;
  Count total_ = 0;
};

// Rows are distinct messages (exact token sequence, first-appearance order),
// columns distinct phrases (concept sets, first-appearance order).
inline ContingencyTable contingency(std::span<const CorpusRecord> records) {
  if (records.empty()) throw InvalidArgument("contingency of an empty corpus");
  std::map<Message, std::size_t> message_ids;
  std::map<LabelingRule, std::size_t> phrase_ids;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(records.size());
  for (const CorpusRecord& record : records) {
    const auto m = message_ids.emplace(record.message, message_ids.size()).first->second;
    const auto p = phrase_ids.emplace(record.phrase, phrase_ids.size()).first->second;
    cells.emplace_back(m, p);
  }
  const std::size_t rows = message_ids.size();
  const std::size_t cols = phrase_ids.size();
  std::vector<Count> counts(rows * cols, 0);
  for (auto [m, p] : cells) ++counts[m * cols + p];
  return ContingencyTable(rows, cols, std::move(counts));
}

inline ContingencyTable contingency(const Corpus& corpus) {
  return contingency(std::span<const CorpusRecord>(corpus.records));
}

// Plug-in Shannon entropy of a count vector, 0 log 0 = 0.
inline double entropy(std::span<const Count> counts) {
  Count total = 0;
  for (Count c : counts) {
    if (c < 0) throw InvalidArgument("negative count");
    total += c;
  }
  if (total <= 0) throw InvalidArgument("entropy of an empty distribution");
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (Count c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

inline double joint_entropy(const ContingencyTable& table) {
  return entropy(table.counts());
}

// H(M|L) = H(M, L) - H(L), messages on rows.
inline double conditional_entropy(const ContingencyTable& table) {
  return joint_entropy(table) - entropy(table.col_sums());
}

inline double mutual_information(const ContingencyTable& table) {
  const double n = static_cast<double>(table.total());
  if (table.total() <= 0) throw InvalidArgument("mutual information of an empty table");
  double mi = 0.0;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const double a = static_cast<double>(table.row_sums()[i]);
    for (std::size_t j = 0; j < table.cols(); ++j) {
      const Count nij = table(i, j);
      if (nij == 0) continue;
      const double b = static_cast<double>(table.col_sums()[j]);
      const double x = static_cast<double>(nij);
      mi += (x / n) * std::log(n * x / (a * b));
    }
  }
  return std::max(mi, 0.0);
}

// log k! for k = 0..n, by cumulative summation of log i.
inline std::vector<double> log_factorials(std::size_t n) {
  std::vector<double> table(n + 1, 0.0);
  for (std::size_t k = 2; k <= n; ++k) {
    table[k] = table[k - 1] + std::log(static_cast<double>(k));
  }
  return table;
}

// Exact E[I] under the permutation model with the table's marginals. Cells
// depend only on their (row sum, column sum) pair, so equal marginals are
// grouped and each group is evaluated once.
inline double expected_mi(const ContingencyTable& table) {
  const Count total = table.total();
  if (total <= 0) throw InvalidArgument("expected MI of an empty table");
  const double n = static_cast<double>(total);
  const auto lf = log_factorials(static_cast<std::size_t>(total));
  auto lfact = [&](Count k) { return lf[static_cast<std::size_t>(k)]; };

  std::map<Count, std::size_t> row_groups, col_groups;
  for (Count a : table.row_sums()) ++row_groups[a];
  for (Count b : table.col_sums()) ++col_groups[b];

  double emi = 0.0;
  for (auto [a, row_mult] : row_groups) {
    if (a == 0) continue;
    for (auto [b, col_mult] : col_groups) {
      if (b == 0) continue;
      const Count lo = std::max<Count>(1, a + b - total);
      const Count hi = std::min(a, b);
      const double fixed = lfact(a) + lfact(b) + lfact(total - a) +
                           lfact(total - b) - lfact(total);
      double cell = 0.0;
      for (Count k = lo; k <= hi; ++k) {
        const double log_p = fixed - lfact(k) - lfact(a - k) - lfact(b - k) -
                             lfact(total - a - b + k);
        const double x = static_cast<double>(k);
        cell += (x / n) *
                std::log(n * x / (static_cast<double>(a) * static_cast<double>(b))) *
                std::exp(log_p);
      }
      emi += cell * static_cast<double>(row_mult) * static_cast<double>(col_mult);
    }
  }
  return std::max(emi, 0.0);
}

// True when every non-empty row and column holds exactly one non-zero cell,
// i.e. both partitions of the records coincide.
inline bool is_permuted_diagonal(const ContingencyTable& table) {
  std::vector<int> col_hits(table.cols(), 0);
  for (std::size_t i = 0; i < table.rows(); ++i) {
    int row_hits = 0;
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (table(i, j) == 0) continue;
      ++row_hits;
      ++col_hits[j];
    }
    if (row_hits > 1) return false;
  }
  for (int hits : col_hits) {
    if (hits > 1) return false;
  }
  return true;
}

struct AmiSummary {
  double ami = 0.0;
  double mi = 0.0;
  double emi = 0.0;
  double h_messages = 0.0;
  double h_phrases = 0.0;
  double h_messages_given_phrases = 0.0;
};

// Identical partitions score exactly 1. Otherwise, when max(H) or the
// denominator vanishes the score is 0.
inline AmiSummary ami_summary(const ContingencyTable& table) {
  AmiSummary s;
  s.mi = mutual_information(table);
  s.emi = expected_mi(table);
  s.h_messages = entropy(table.row_sums());
  s.h_phrases = entropy(table.col_sums());
  s.h_messages_given_phrases = std::max(conditional_entropy(table), 0.0);
  if (is_permuted_diagonal(table)) {
    s.ami = 1.0;
    return s;
  }
  const double h_max = std::max(s.h_messages, s.h_phrases);
  const double denominator = h_max - s.emi;
  if (h_max == 0.0 || denominator == 0.0) {
    s.ami = 0.0;
    return s;
  }
  s.ami = (s.mi - s.emi) / denominator;
  return s;
}

inline double ami(const ContingencyTable& table) { return ami_summary(table).ami; }

}  // namespace ecbm

#endif  // ECBM_INFOMETRICS_HPP_

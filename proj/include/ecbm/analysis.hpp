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

#ifndef ECBM_ANALYSIS_HPP_
#define ECBM_ANALYSIS_HPP_

// Dataset-size sensitivity of CBM and multi-corpus comparison tables.
//
// The sweep evaluates growing prefixes of the corpus (accumulated series)
// and disjoint consecutive chunks (segmented series). Every point rebuilds
// its own graph and best match. Record order defines the chunks.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecbm/cbm.hpp"
#include "ecbm/corpus.hpp"
#include "ecbm/error.hpp"
#include "ecbm/parallel.hpp"
#include "ecbm/report.hpp"

namespace ecbm {

struct SensitivitySeries {
  std::size_t chunk_size = 0;
  std::vector<std::pair<std::size_t, double>> accumulated;  // (n_samples, cbm)
  std::vector<std::pair<std::size_t, double>> segmented;    // (segment index, cbm)
  double std_accumulated = 0.0;
  double std_segmented = 0.0;
};

// Population standard deviation.
inline double population_std(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

// Accumulated points sit at chunk, 2*chunk, ...; when the corpus size is not
// a multiple of the chunk a final point covers the whole corpus. Only full
// chunks form segments.
inline SensitivitySeries sensitivity_sweep(std::span<const CorpusRecord> records,
                                           std::size_t chunk_size,
                                           std::size_t threads = thread_count()) {
  if (chunk_size == 0) throw InvalidArgument("chunk size must be positive");
  const std::size_t n = records.size();
  if (n < 2 * chunk_size) {
    throw InvalidArgument("corpus of " + std::to_string(n) +
                          " records is too small for chunk size " +
                          std::to_string(chunk_size) + " (need at least two chunks)");
  }
  std::vector<std::size_t> prefix_sizes;
  for (std::size_t k = chunk_size; k <= n; k += chunk_size) prefix_sizes.push_back(k);
  if (prefix_sizes.back() != n) prefix_sizes.push_back(n);
  const std::size_t segments = n / chunk_size;

  // Jobs [0, prefixes) are prefixes, the rest are segments.
  const std::size_t jobs = prefix_sizes.size() + segments;
  std::vector<double> scores(jobs);
  parallel_for(jobs, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t job = begin; job < end; ++job) {
      std::span<const CorpusRecord> slice;
      if (job < prefix_sizes.size()) {
        slice = records.first(prefix_sizes[job]);
      } else {
        slice = records.subspan((job - prefix_sizes.size()) * chunk_size, chunk_size);
      }
      scores[job] = evaluate_cbm(slice).report.cbm;
    }
  });

  SensitivitySeries series;
  series.chunk_size = chunk_size;
  for (std::size_t k = 0; k < prefix_sizes.size(); ++k) {
    series.accumulated.emplace_back(prefix_sizes[k], scores[k]);
  }
  for (std::size_t s = 0; s < segments; ++s) {
    series.segmented.emplace_back(s, scores[prefix_sizes.size() + s]);
  }
  const std::span<const double> all(scores);
  series.std_accumulated = population_std(all.first(prefix_sizes.size()));
  series.std_segmented = population_std(all.subspan(prefix_sizes.size()));
  return series;
}

inline SensitivitySeries sensitivity_sweep(const Corpus& corpus, std::size_t chunk_size,
                                           std::size_t threads = thread_count()) {
  return sensitivity_sweep(std::span<const CorpusRecord>(corpus.records), chunk_size,
                           threads);
}

inline std::string to_json(const SensitivitySeries& series) {
  nlohmann::ordered_json j;
  j["chunk_size"] = series.chunk_size;
  j["accumulated"] = nlohmann::ordered_json::array();
  for (auto [n, cbm] : series.accumulated) {
    j["accumulated"].push_back({{"n_samples", n}, {"cbm", cbm}});
  }
  j["segmented"] = nlohmann::ordered_json::array();
  for (auto [index, cbm] : series.segmented) {
    j["segmented"].push_back({{"segment", index}, {"cbm", cbm}});
  }
  j["std_accumulated"] = series.std_accumulated;
  j["std_segmented"] = series.std_segmented;
  return detail::canonical_dump(j);
}

// Rows in the given order.
inline ComparisonTable compare(std::span<const EvalReport> reports) {
  if (reports.empty()) throw InvalidArgument("comparison needs at least one report");
  ComparisonTable table;
  for (const EvalReport& report : reports) table.rows.push_back(comparison_row(report));
  return table;
}

}  // namespace ecbm

#endif  // ECBM_ANALYSIS_HPP_

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

#ifndef ECBM_PIPELINE_HPP_
#define ECBM_PIPELINE_HPP_

// Report-level verbs shared by the command-line tool and language bindings:
// evaluate a corpus into an EvalReport, and generate a corpus file. Both are
// deterministic functions of their arguments.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecbm/cbm.hpp"
#include "ecbm/corpus.hpp"
#include "ecbm/error.hpp"
#include "ecbm/infometrics.hpp"
#include "ecbm/parallel.hpp"
#include "ecbm/report.hpp"
#include "ecbm/senders.hpp"
#include "ecbm/topsim.hpp"

namespace ecbm {

struct MetricSet {
  bool cbm = true;
  bool ami = true;
  bool topsim = true;

  static MetricSet all() { return {}; }
  static MetricSet none() { return {false, false, false}; }

  // Comma-separated subset of cbm, ami, topsim.
  static MetricSet parse(std::string_view text) {
    MetricSet set = none();
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const auto item = text.substr(start, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - start);
      if (item == "cbm") {
        set.cbm = true;
      } else if (item == "ami") {
        set.ami = true;
      } else if (item == "topsim") {
        set.topsim = true;
      } else {
        throw InvalidArgument("unknown metric \"" + std::string(item) +
                              "\" (expected cbm, ami or topsim)");
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return set;
  }
};

struct EvalOptions {
  MetricSet metrics;
  std::uint64_t seed = 0;
  std::string corpus_label;
  std::size_t threads = thread_count();
};

struct Evaluation {
  EvalReport report;
  std::optional<CbmResult> cbm;       // kept for graph export
  std::vector<std::string> warnings;  // metrics that were skipped, and why
};

// TopSim is left out, with a warning, when either pairwise list is constant
// or the corpus has a single record.
template <typename Encoder = RuleEncoder>
Evaluation evaluate(const Corpus& corpus, const EvalOptions& options,
                    const Encoder& encoder = Encoder{}) {
  if (corpus.records.empty()) throw DataError("corpus has no records");
  Evaluation out;
  EvalReport& r = out.report;
  r.provenance.schema = corpus.schema.name();
  r.provenance.corpus = options.corpus_label;
  r.provenance.seed = options.seed;
  r.stats = corpus_stats(corpus);
  if (options.metrics.cbm) {
    out.cbm = evaluate_cbm(corpus);
    r.cbm = out.cbm->report;
    r.translation = summarize(out.cbm->translation, corpus.schema);
  }
  if (options.metrics.ami) r.ami = ami_summary(contingency(corpus));
  if (options.metrics.topsim) {
    try {
      r.topsim = topsim(corpus, encoder, options.threads);
    } catch (const InvalidArgument& e) {
      out.warnings.push_back(std::string("topsim omitted: ") + e.what());
    }
  }
  return out;
}

// Writes through a sibling temporary file and renames it into place, so a
// failure never leaves a partial file at `path`.
inline void atomic_write(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw DataError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw DataError("cannot move report into " + path.string() + ": " + ec.message());
  }
}

// Bridge verb: evaluate a corpus file, return the canonical report JSON.
inline std::string evaluate_file(const std::string& corpus_path,
                                 const MetricSet& metrics = MetricSet::all(),
                                 std::uint64_t seed = 0) {
  const Corpus corpus = read_corpus(corpus_path);
  EvalOptions options;
  options.metrics = metrics;
  options.seed = seed;
  options.corpus_label = corpus_path;
  return to_json(evaluate(corpus, options).report);
}

// Bridge verb: generate a corpus file and return its path.
inline std::string generate_file(const std::string& schema_selector,
                                 const std::string& sender, std::size_t rule_length,
                                 std::size_t n_samples, std::uint64_t seed,
                                 const std::string& out_path) {
  const AttributeSchema schema = load_schema(schema_selector);
  const Corpus corpus =
      generate_corpus(schema, SenderModel::parse(sender), rule_length, n_samples, seed);
  atomic_write(out_path, corpus_to_string(corpus));
  return out_path;
}

}  // namespace ecbm

#endif  // ECBM_PIPELINE_HPP_

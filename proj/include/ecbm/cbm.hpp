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

#ifndef ECBM_CBM_HPP_
#define ECBM_CBM_HPP_

// Concept best matching scores derived from a translation map.
//
// Every word occurrence of every record gets one verdict:
//   good        the word is matched and its concept is in the record's phrase
//   ambiguous   the word is matched to a concept the phrase does not contain
//   paraphrase  the word has no matched concept
// Occurrences are judged independently; a repeated word does not "use up"
// its concept. With Q = sum_i max(|m_i|, |l_i|):
//   cbm = good / Q, amb = ambiguous / Q, para = paraphrase / Q
//   precision = covered / sum_i |m_i|, recall = covered / sum_i |l_i|
// where covered counts phrase concepts that some word of the same message is
// matched to, and unm is the share of phrase concept occurrences whose
// concept has no matched word anywhere.

#include <cstddef>
#include <span>
#include <vector>

#include "ecbm/assignment.hpp"
#include "ecbm/corpus.hpp"
#include "ecbm/error.hpp"

namespace ecbm {

enum class WordVerdict { kGood, kAmbiguous, kParaphrase };

struct RecordClassification {
  std::vector<WordVerdict> verdicts;  // one per message position
  std::vector<Concept> covered;       // subset of the phrase, schema order
};

inline RecordClassification classify_record(const CorpusRecord& record,
                                            const TranslationMap& translation) {
  RecordClassification result;
  result.verdicts.reserve(record.message.size());
  std::vector<char> covered(record.phrase.size(), 0);
  const auto phrase = record.phrase.concepts();
  for (const Word& word : record.message) {
    const auto matched = translation.concept_for(word);
    if (!matched) {
      result.verdicts.push_back(WordVerdict::kParaphrase);
      continue;
    }
    auto it = std::lower_bound(phrase.begin(), phrase.end(), *matched);
    if (it != phrase.end() && *it == *matched) {
      result.verdicts.push_back(WordVerdict::kGood);
      covered[static_cast<std::size_t>(it - phrase.begin())] = 1;
    } else {
      result.verdicts.push_back(WordVerdict::kAmbiguous);
    }
  }
  for (std::size_t k = 0; k < phrase.size(); ++k) {
    if (covered[k]) result.covered.push_back(phrase[k]);
  }
  return result;
}

struct CbmReport {
  double cbm = 0.0;
  double amb = 0.0;
  double para = 0.0;
  double unm = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double lower_bound = 0.0;
  std::size_t good_count = 0;
  std::size_t amb_count = 0;
  std::size_t para_count = 0;
  std::size_t covered_concept_occurrences = 0;
  std::size_t unmatched_concept_occurrences = 0;
  std::size_t q = 0;
  std::size_t total_words = 0;
  std::size_t total_concepts = 0;
};

// `graph` must be the graph `translation` was matched on; it supplies the
// lower bound.
inline CbmReport cbm_report(std::span<const CorpusRecord> records,
                            const BipartiteGraph& graph,
                            const TranslationMap& translation) {
  if (records.empty()) throw InvalidArgument("cannot score an empty corpus");
  CbmReport report;
  for (const CorpusRecord& record : records) {
    const auto classification = classify_record(record, translation);
    for (WordVerdict verdict : classification.verdicts) {
      switch (verdict) {
        case WordVerdict::kGood: ++report.good_count; break;
        case WordVerdict::kAmbiguous: ++report.amb_count; break;
        case WordVerdict::kParaphrase: ++report.para_count; break;
      }
    }
    report.covered_concept_occurrences += classification.covered.size();
    for (const Concept& c : record.phrase.concepts()) {
      if (!translation.is_matched(c)) ++report.unmatched_concept_occurrences;
    }
    report.q += std::max(record.message.size(), record.phrase.size());
    report.total_words += record.message.size();
    report.total_concepts += record.phrase.size();
  }
  const auto q = static_cast<double>(report.q);
  report.cbm = static_cast<double>(report.good_count) / q;
  report.amb = static_cast<double>(report.amb_count) / q;
  report.para = static_cast<double>(report.para_count) / q;
  report.unm = static_cast<double>(report.unmatched_concept_occurrences) /
               static_cast<double>(report.total_concepts);
  report.precision = static_cast<double>(report.covered_concept_occurrences) /
                     static_cast<double>(report.total_words);
  report.recall = static_cast<double>(report.covered_concept_occurrences) /
                  static_cast<double>(report.total_concepts);
  report.lower_bound = cbm_lower_bound(graph, static_cast<Weight>(report.q));
  return report;
}

inline CbmReport cbm_report(const Corpus& corpus, const BipartiteGraph& graph,
                            const TranslationMap& translation) {
  return cbm_report(std::span<const CorpusRecord>(corpus.records), graph, translation);
}

// Graph, best match and scores in one go.
struct CbmResult {
  BipartiteGraph graph;
  TranslationMap translation;
  CbmReport report;
};

inline CbmResult evaluate_cbm(std::span<const CorpusRecord> records) {
  CbmResult result;
  result.graph = build_graph(records);
  result.translation = max_weight_matching(result.graph);
  result.report = cbm_report(records, result.graph, result.translation);
  return result;
}

inline CbmResult evaluate_cbm(const Corpus& corpus) {
  return evaluate_cbm(std::span<const CorpusRecord>(corpus.records));
}

}  // namespace ecbm

#endif  // ECBM_CBM_HPP_

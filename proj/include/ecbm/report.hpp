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

#ifndef ECBM_REPORT_HPP_
#define ECBM_REPORT_HPP_

// Self-contained evaluation reports and their renderings: canonical JSON,
// Graphviz DOT for the translation graph, and fixed-width tables.
//
// Canonical JSON means fixed key order, two-space indentation and every real
// printed with exactly six decimals, so equal reports serialise to equal
// bytes. Absent metrics are omitted rather than written as null.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecbm/assignment.hpp"
#include "ecbm/cbm.hpp"
#include "ecbm/corpus.hpp"
#include "ecbm/error.hpp"
#include "ecbm/infometrics.hpp"

namespace ecbm {

inline constexpr std::string_view kToolName = "ecbm";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct Provenance {
  std::string tool{kToolName};
  std::string version{kToolVersion};
  std::string schema;
  std::string corpus;
  std::uint64_t seed = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TranslationEntry {
  std::string word;
  std::string meaning;
  Weight weight = 0;

  friend bool operator==(const TranslationEntry&, const TranslationEntry&) = default;
};

// Translation map with concepts spelled out, independent of any schema.
struct TranslationSummary {
  Weight bm_score = 0;
  std::vector<TranslationEntry> pairs;
  std::vector<std::string> unmatched_words;
  std::vector<std::string> unmatched_concepts;

  friend bool operator==(const TranslationSummary&, const TranslationSummary&) = default;
};

inline TranslationSummary summarize(const TranslationMap& translation,
                                    const AttributeSchema& schema) {
  TranslationSummary summary;
  summary.bm_score = translation.bm_score();
  for (const MatchedPair& pair : translation.pairs()) {
    summary.pairs.push_back({pair.word, schema.concept_name(pair.meaning), pair.weight});
  }
  for (const Word& w : translation.unmatched_words()) summary.unmatched_words.push_back(w);
  for (const Concept& c : translation.unmatched_concepts()) {
    summary.unmatched_concepts.push_back(schema.concept_name(c));
  }
  return summary;
}

struct EvalReport {
  Provenance provenance;
  CorpusStats stats;
  std::optional<CbmReport> cbm;
  std::optional<AmiSummary> ami;
  std::optional<double> topsim;
  std::optional<TranslationSummary> translation;
};

namespace detail {

// Six decimals, no negative zero.
inline std::string format_real(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot serialise a non-finite value");
  double rounded = std::round(x * 1e6) / 1e6;
  if (rounded == 0.0) rounded = 0.0;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", rounded);
  return buffer;
}

inline bool is_scalar(const nlohmann::ordered_json& j) {
  return !j.is_object() && !j.is_array();
}

inline void emit(std::string& out, const nlohmann::ordered_json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::ordered_json(key).dump() + ": ";
        emit(out, value, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          emit(out, j[k], depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        emit(out, j[k], depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

inline std::string canonical_dump(const nlohmann::ordered_json& j) {
  std::string out;
  emit(out, j, 0);
  out += '\n';
  return out;
}

inline nlohmann::ordered_json report_tree(const EvalReport& r) {
  using nlohmann::ordered_json;
  ordered_json root = ordered_json::object();
  ordered_json& p = root["provenance"];
  p["tool"] = r.provenance.tool;
  p["version"] = r.provenance.version;
  p["schema"] = r.provenance.schema;
  p["corpus"] = r.provenance.corpus;
  p["seed"] = r.provenance.seed;

  ordered_json& s = root["stats"];
  s["records"] = r.stats.records;
  s["unique_concepts"] = r.stats.unique_concepts;
  s["unique_phrases"] = r.stats.unique_phrases;
  s["unique_words"] = r.stats.unique_words;
  s["unique_messages"] = r.stats.unique_messages;
  s["total_word_occurrences"] = r.stats.total_word_occurrences;
  s["total_concept_occurrences"] = r.stats.total_concept_occurrences;

  if (r.cbm) {
    ordered_json& c = root["cbm"];
    c["cbm"] = r.cbm->cbm;
    c["amb"] = r.cbm->amb;
    c["para"] = r.cbm->para;
    c["unm"] = r.cbm->unm;
    c["precision"] = r.cbm->precision;
    c["recall"] = r.cbm->recall;
    c["lower_bound"] = r.cbm->lower_bound;
    c["good_count"] = r.cbm->good_count;
    c["amb_count"] = r.cbm->amb_count;
    c["para_count"] = r.cbm->para_count;
    c["covered_concept_occurrences"] = r.cbm->covered_concept_occurrences;
    c["unmatched_concept_occurrences"] = r.cbm->unmatched_concept_occurrences;
    c["q"] = r.cbm->q;
    c["total_words"] = r.cbm->total_words;
    c["total_concepts"] = r.cbm->total_concepts;
  }
  if (r.ami) {
    ordered_json& a = root["ami"];
    a["ami"] = r.ami->ami;
    a["mi"] = r.ami->mi;
    a["emi"] = r.ami->emi;
    a["h_messages"] = r.ami->h_messages;
    a["h_phrases"] = r.ami->h_phrases;
    a["h_messages_given_phrases"] = r.ami->h_messages_given_phrases;
  }
  if (r.topsim) root["topsim"] = *r.topsim;
  if (r.translation) {
    ordered_json& t = root["translation"];
    t["bm_score"] = r.translation->bm_score;
    t["pairs"] = ordered_json::array();
    for (const auto& pair : r.translation->pairs) {
      ordered_json entry;
      entry["word"] = pair.word;
      entry["concept"] = pair.meaning;
      entry["weight"] = pair.weight;
      t["pairs"].push_back(std::move(entry));
    }
    t["unmatched_words"] = r.translation->unmatched_words;
    t["unmatched_concepts"] = r.translation->unmatched_concepts;
  }
  return root;
}

template <typename T>
T field(const nlohmann::json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) throw DataError(std::string("report is missing \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DataError(std::string("report field \"") + key + "\" has the wrong type");
  }
}

}  // namespace detail

inline std::string to_json(const EvalReport& report) {
  return detail::canonical_dump(detail::report_tree(report));
}

inline EvalReport report_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid report JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("report must be a JSON object");
  using detail::field;
  EvalReport r;
  const auto p = field<nlohmann::json>(j, "provenance");
  r.provenance.tool = field<std::string>(p, "tool");
  r.provenance.version = field<std::string>(p, "version");
  r.provenance.schema = field<std::string>(p, "schema");
  r.provenance.corpus = field<std::string>(p, "corpus");
  r.provenance.seed = field<std::uint64_t>(p, "seed");

  const auto s = field<nlohmann::json>(j, "stats");
  r.stats.records = field<std::size_t>(s, "records");
  r.stats.unique_concepts = field<std::size_t>(s, "unique_concepts");
  r.stats.unique_phrases = field<std::size_t>(s, "unique_phrases");
  r.stats.unique_words = field<std::size_t>(s, "unique_words");
  r.stats.unique_messages = field<std::size_t>(s, "unique_messages");
  r.stats.total_word_occurrences = field<std::size_t>(s, "total_word_occurrences");
  r.stats.total_concept_occurrences = field<std::size_t>(s, "total_concept_occurrences");

  if (j.contains("cbm")) {
    const auto c = field<nlohmann::json>(j, "cbm");
    CbmReport cbm;
    cbm.cbm = field<double>(c, "cbm");
    cbm.amb = field<double>(c, "amb");
    cbm.para = field<double>(c, "para");
    cbm.unm = field<double>(c, "unm");
    cbm.precision = field<double>(c, "precision");
    cbm.recall = field<double>(c, "recall");
    cbm.lower_bound = field<double>(c, "lower_bound");
    cbm.good_count = field<std::size_t>(c, "good_count");
    cbm.amb_count = field<std::size_t>(c, "amb_count");
    cbm.para_count = field<std::size_t>(c, "para_count");
    cbm.covered_concept_occurrences = field<std::size_t>(c, "covered_concept_occurrences");
    cbm.unmatched_concept_occurrences =
        field<std::size_t>(c, "unmatched_concept_occurrences");
    cbm.q = field<std::size_t>(c, "q");
    cbm.total_words = field<std::size_t>(c, "total_words");
    cbm.total_concepts = field<std::size_t>(c, "total_concepts");
    r.cbm = cbm;
  }
  if (j.contains("ami")) {
    const auto a = field<nlohmann::json>(j, "ami");
    AmiSummary ami;
    ami.ami = field<double>(a, "ami");
    ami.mi = field<double>(a, "mi");
    ami.emi = field<double>(a, "emi");
    ami.h_messages = field<double>(a, "h_messages");
    ami.h_phrases = field<double>(a, "h_phrases");
    ami.h_messages_given_phrases = field<double>(a, "h_messages_given_phrases");
    r.ami = ami;
  }
  if (j.contains("topsim")) r.topsim = field<double>(j, "topsim");
  if (j.contains("translation")) {
    const auto t = field<nlohmann::json>(j, "translation");
    TranslationSummary summary;
    summary.bm_score = field<Weight>(t, "bm_score");
    for (const auto& entry : field<nlohmann::json>(t, "pairs")) {
      summary.pairs.push_back({field<std::string>(entry, "word"),
                               field<std::string>(entry, "concept"),
                               field<Weight>(entry, "weight")});
    }
    summary.unmatched_words = field<std::vector<std::string>>(t, "unmatched_words");
    summary.unmatched_concepts = field<std::vector<std::string>>(t, "unmatched_concepts");
    r.translation = std::move(summary);
  }
  return r;
}

namespace detail {

inline std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace detail

// Undirected bipartite layout: words on one rank, concepts on the next, one
// weight-labelled edge per matched pair. Unmatched nodes stay isolated.
inline std::string to_dot(const TranslationMap& translation, const BipartiteGraph& graph,
                          const AttributeSchema& schema) {
  std::ostringstream out;
  out << "graph translation {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=ellipse];\n";
  out << "  {\n    rank=same;\n";
  for (std::size_t w = 0; w < graph.words.size(); ++w) {
    out << "    w" << w << " [label=" << detail::dot_quote(graph.words[w]) << "];\n";
  }
  out << "  }\n";
  out << "  {\n    rank=same;\n";
  for (std::size_t c = 0; c < graph.concepts.size(); ++c) {
    out << "    c" << c << " [label=" << detail::dot_quote(schema.concept_name(graph.concepts[c]))
        << ", shape=box];\n";
  }
  out << "  }\n";
  for (const MatchedPair& pair : translation.pairs()) {
    const auto w = graph.word_index(pair.word);
    const auto c = graph.concept_position(pair.meaning);
    if (!w || !c) throw InvalidArgument("translation map was not built from this graph");
    out << "  w" << *w << " -- c" << *c << " [label=\"" << pair.weight << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

// One row of the comparison layout: Cons, Phrs, #w, #m, TopSim, AMI, CBM,
// Amb, Para, Unm, Prc, Rcl.
inline constexpr std::array<std::string_view, 12> kComparisonColumns = {
    "Cons", "Phrs", "#w", "#m", "TopSim", "AMI", "CBM", "Amb", "Para", "Unm", "Prc", "Rcl"};
inline constexpr std::size_t kIntegerColumns = 4;

struct ComparisonRow {
  std::string label;
  std::array<std::optional<double>, kComparisonColumns.size()> cells;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
};

inline ComparisonRow comparison_row(const EvalReport& report) {
  ComparisonRow row;
  row.label = report.provenance.corpus;
  row.cells[0] = static_cast<double>(report.stats.unique_concepts);
  row.cells[1] = static_cast<double>(report.stats.unique_phrases);
  row.cells[2] = static_cast<double>(report.stats.unique_words);
  row.cells[3] = static_cast<double>(report.stats.unique_messages);
  row.cells[4] = report.topsim;
  if (report.ami) row.cells[5] = report.ami->ami;
  if (report.cbm) {
    row.cells[6] = report.cbm->cbm;
    row.cells[7] = report.cbm->amb;
    row.cells[8] = report.cbm->para;
    row.cells[9] = report.cbm->unm;
    row.cells[10] = report.cbm->precision;
    row.cells[11] = report.cbm->recall;
  }
  return row;
}

namespace detail {

inline std::size_t display_width(std::string_view text) {
  std::size_t width = 0;
  for (unsigned char ch : text) {
    if ((ch & 0xC0) != 0x80) ++width;  // count UTF-8 lead bytes
  }
  return width;
}

inline std::string pad_left(std::string_view text, std::size_t width) {
  const std::size_t w = display_width(text);
  return std::string(w < width ? width - w : 0, ' ') + std::string(text);
}

inline std::string pad_right(std::string_view text, std::size_t width) {
  const std::size_t w = display_width(text);
  return std::string(text) + std::string(w < width ? width - w : 0, ' ');
}

inline std::string fit_label(const std::string& label, std::size_t width) {
  if (display_width(label) <= width) return label;
  return "..." + label.substr(label.size() - (width - 3));
}

}  // namespace detail

inline constexpr std::string_view kAbsentCell = "—";

// Fixed-width rendering; counts as integers, metrics with two decimals and
// absent metrics as an em dash.
inline std::string to_table(const ComparisonTable& table) {
  constexpr std::size_t kLabelWidth = 24;
  constexpr std::size_t kCellWidth = 7;
  std::string out = detail::pad_right("Corpus", kLabelWidth);
  for (std::string_view column : kComparisonColumns) {
    out += " " + detail::pad_left(column, kCellWidth);
  }
  out += "\n";
  for (const ComparisonRow& row : table.rows) {
    out += detail::pad_right(detail::fit_label(row.label, kLabelWidth), kLabelWidth);
    for (std::size_t k = 0; k < row.cells.size(); ++k) {
      std::string cell;
      if (!row.cells[k]) {
        cell = std::string(kAbsentCell);
      } else if (k < kIntegerColumns) {
        cell = std::to_string(static_cast<long long>(std::llround(*row.cells[k])));
      } else {
        char buffer[32];
        double value = std::round(*row.cells[k] * 100.0) / 100.0;
        if (value == 0.0) value = 0.0;
        std::snprintf(buffer, sizeof buffer, "%.2f", value);
        cell = buffer;
      }
      out += " " + detail::pad_left(cell, kCellWidth);
    }
    out += "\n";
  }
  return out;
}

inline std::string to_table(const EvalReport& report) {
  return to_table(ComparisonTable{{comparison_row(report)}});
}

}  // namespace ecbm

#endif  // ECBM_REPORT_HPP_

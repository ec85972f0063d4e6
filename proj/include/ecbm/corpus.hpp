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

#ifndef ECBM_CORPUS_HPP_
#define ECBM_CORPUS_HPP_

// (message, phrase) corpora and their JSONL persistence.
//
// File layout, one JSON value per line:
//   {"schema": {"builtin": "shape"}}            or an inline schema object,
//                                               or a path to a schema file
//   {"id": 0, "message": ["w3", "w7"], "phrase": [{"feature": "color", "value": "red"}]}
//   ...

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecbm/error.hpp"
#include "ecbm/world.hpp"

namespace ecbm {

using Word = std::string;
using Message = std::vector<Word>;

struct CorpusRecord {
  std::uint64_t id = 0;
  Message message;
  LabelingRule phrase;

  friend bool operator==(const CorpusRecord&, const CorpusRecord&) = default;
};

struct Corpus {
  AttributeSchema schema;
  std::vector<CorpusRecord> records;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

inline bool is_valid_word(std::string_view token) {
  if (token.empty()) return false;
  for (unsigned char ch : token) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' ||
        ch == '\f') {
      return false;
    }
  }
  return true;
}

struct CorpusStats {
  std::size_t records = 0;
  std::size_t unique_concepts = 0;
  std::size_t unique_phrases = 0;
  std::size_t unique_words = 0;
  std::size_t unique_messages = 0;
  std::size_t total_word_occurrences = 0;
  std::size_t total_concept_occurrences = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

inline CorpusStats corpus_stats(std::span<const CorpusRecord> records) {
  CorpusStats stats;
  stats.records = records.size();
  std::set<Concept> concepts;
  std::set<LabelingRule> phrases;
  std::unordered_set<Word> words;
  std::set<Message> messages;
  for (const CorpusRecord& record : records) {
    for (const Concept& c : record.phrase.concepts()) concepts.insert(c);
    phrases.insert(record.phrase);
    for (const Word& w : record.message) words.insert(w);
    messages.insert(record.message);
    stats.total_word_occurrences += record.message.size();
    stats.total_concept_occurrences += record.phrase.size();
  }
  stats.unique_concepts = concepts.size();
  stats.unique_phrases = phrases.size();
  stats.unique_words = words.size();
  stats.unique_messages = messages.size();
  return stats;
}

inline CorpusStats corpus_stats(const Corpus& corpus) {
  return corpus_stats(std::span<const CorpusRecord>(corpus.records));
}

namespace detail {

inline nlohmann::json schema_header(const AttributeSchema& schema) {
  if (schema.is_builtin()) {
    return nlohmann::json{{"schema", {{"builtin", schema.name()}}}};
  }
  return nlohmann::json{{"schema", schema.to_json()}};
}

inline std::string record_line(const AttributeSchema& schema,
                               const CorpusRecord& record) {
  nlohmann::ordered_json line;
  line["id"] = record.id;
  line["message"] = record.message;
  nlohmann::ordered_json phrase = nlohmann::ordered_json::array();
  for (const Concept& c : record.phrase.concepts()) {
    nlohmann::ordered_json entry;
    entry["feature"] = schema.feature_name(c);
    entry["value"] = schema.value_name(c);
    phrase.push_back(std::move(entry));
  }
  line["phrase"] = std::move(phrase);
  return line.dump();
}

[[noreturn]] inline void fail_at(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

inline AttributeSchema resolve_header(const nlohmann::json& header,
                                      const std::filesystem::path& base_dir,
                                      std::size_t line) {
  const auto& schema = header["schema"];
  try {
    if (schema.is_string()) {
      // Sidecar schema file, relative to the corpus.
      std::filesystem::path path = schema.get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      return load_schema(path.string());
    }
    return build_schema(schema);
  } catch (const DataError& e) {
    fail_at(line, e.what());
  }
}

inline CorpusRecord parse_record(const AttributeSchema& schema,
                                 const nlohmann::json& j, std::size_t line) {
  if (!j.is_object()) fail_at(line, "record must be a JSON object");
  CorpusRecord record;
  auto id = j.find("id");
  if (id == j.end() || !id->is_number_unsigned()) {
    fail_at(line, "\"id\" must be a non-negative integer");
  }
  record.id = id->get<std::uint64_t>();

  auto message = j.find("message");
  if (message == j.end() || !message->is_array()) {
    fail_at(line, "\"message\" must be an array of words");
  }
  for (const auto& token : *message) {
    std::string word;
    if (token.is_string()) {
      word = token.get<std::string>();
    } else if (token.is_number_integer()) {
      word = token.dump();  // integer word ids are treated as text
    } else {
      fail_at(line, "message words must be strings or integers");
    }
    if (!is_valid_word(word)) {
      fail_at(line, "invalid word \"" + word + "\" (empty or contains whitespace)");
    }
    record.message.push_back(std::move(word));
  }
  if (record.message.empty()) fail_at(line, "empty message");

  auto phrase = j.find("phrase");
  if (phrase == j.end() || !phrase->is_array()) {
    fail_at(line, "\"phrase\" must be an array of {feature, value} objects");
  }
  std::vector<Concept> concepts;
  for (const auto& entry : *phrase) {
    if (!entry.is_object() || !entry.contains("feature") ||
        !entry.contains("value") || !entry["feature"].is_string() ||
        !entry["value"].is_string()) {
      fail_at(line, "phrase entries must be {\"feature\": str, \"value\": str}");
    }
    try {
      concepts.push_back(schema.concept_named(entry["feature"].get<std::string>(),
                                              entry["value"].get<std::string>()));
    } catch (const DataError& e) {
      fail_at(line, e.what());
    }
  }
  try {
    record.phrase = LabelingRule::make(schema, std::move(concepts));
  } catch (const DataError& e) {
    fail_at(line, e.what());
  }
  return record;
}

}  // namespace detail

// Reads a JSONL corpus. Blank lines are skipped; errors name the line.
inline Corpus read_corpus(std::istream& in,
                          const std::filesystem::path& base_dir = ".") {
  std::string text;
  std::size_t line_no = 0;
  std::optional<AttributeSchema> schema;
  std::vector<CorpusRecord> records;
  std::unordered_set<std::uint64_t> ids;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      detail::fail_at(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!schema) {
      if (!j.is_object() || !j.contains("schema")) {
        detail::fail_at(line_no, "no header: expected {\"schema\": ...}");
      }
      schema = detail::resolve_header(j, base_dir, line_no);
      continue;
    }
    CorpusRecord record = detail::parse_record(*schema, j, line_no);
    if (!ids.insert(record.id).second) {
      detail::fail_at(line_no, "duplicate id " + std::to_string(record.id));
    }
    records.push_back(std::move(record));
  }
  if (!schema) throw DataError("no header: corpus is empty");
  return Corpus{std::move(*schema), std::move(records)};
}

inline Corpus read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus \"" + path.string() + "\"");
  try {
    return read_corpus(in, path.parent_path().empty() ? "." : path.parent_path());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

inline void write_corpus(std::ostream& out, const Corpus& corpus) {
  out << detail::schema_header(corpus.schema).dump() << '\n';
  for (const CorpusRecord& record : corpus.records) {
    out << detail::record_line(corpus.schema, record) << '\n';
  }
}

inline std::string corpus_to_string(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(out, corpus);
  return out.str();
}

}  // namespace ecbm

#endif  // ECBM_CORPUS_HPP_

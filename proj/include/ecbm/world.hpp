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

#ifndef ECBM_WORLD_HPP_
#define ECBM_WORLD_HPP_

// Objects, concepts and conjunctive labeling rules of a referential game.
//
// A world is described by an AttributeSchema: an ordered list of categorical
// attributes. A Concept is one feature-value pair of the schema and a
// LabelingRule is a conjunction of concepts over distinct features. Concepts
// are stored as (attribute index, value index) so that their natural ordering
// is the schema order used everywhere else in the library.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecbm/error.hpp"
#include "ecbm/random.hpp"

namespace ecbm {

struct Attribute {
  std::string name;
  std::vector<std::string> values;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Concept {
  std::size_t attribute = 0;
  std::size_t value = 0;

  friend auto operator<=>(const Concept&, const Concept&) = default;
};

class AttributeSchema {
 public:
  // Validates the attribute list. `name` is "inline" for user-supplied
  // schemas and the built-in name otherwise.
  explicit AttributeSchema(std::vector<Attribute> attributes,
                           std::string name = "inline", bool builtin = false)
      : attributes_(std::move(attributes)),
        name_(std::move(name)),
        builtin_(builtin) {
    if (attributes_.empty()) {
      throw DataError("schema has no attributes");
    }
    std::set<std::string_view> names;
    offsets_.reserve(attributes_.size());
    std::size_t offset = 0;
    for (const Attribute& attribute : attributes_) {
      if (attribute.name.empty()) throw DataError("attribute with empty name");
      if (!names.insert(attribute.name).second) {
        throw DataError("duplicate attribute name \"" + attribute.name + "\"");
      }
      if (attribute.values.size() < 2) {
        throw DataError("attribute \"" + attribute.name +
                        "\" needs at least 2 values");
      }
      std::set<std::string_view> values;
      for (const std::string& value : attribute.values) {
        if (value.empty()) {
          throw DataError("attribute \"" + attribute.name +
                          "\" has an empty value name");
        }
        if (!values.insert(value).second) {
          throw DataError("duplicate value \"" + value + "\" in attribute \"" +
                          attribute.name + "\"");
        }
      }
      offsets_.push_back(offset);
      offset += attribute.values.size();
    }
    concept_count_ = offset;
  }

  const std::string& name() const { return name_; }
  bool is_builtin() const { return builtin_; }

  std::span<const Attribute> attributes() const { return attributes_; }
  std::size_t attribute_count() const { return attributes_.size(); }
  std::size_t value_count(std::size_t attribute) const {
    return attributes_.at(attribute).values.size();
  }

  // Size of the concept vocabulary, the sum of all value counts.
  std::size_t concept_count() const { return concept_count_; }

  // Position of a concept in schema order, in [0, concept_count()).
  std::size_t concept_index(Concept c) const {
    return offsets_.at(c.attribute) + c.value;
  }

  Concept concept_at(std::size_t index) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    const auto attribute = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return Concept{attribute, index - offsets_[attribute]};
  }

  bool contains(Concept c) const {
    return c.attribute < attributes_.size() &&
           c.value < attributes_[c.attribute].values.size();
  }

  std::optional<std::size_t> find_attribute(std::string_view name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
      if (attributes_[i].name == name) return i;
    }
    return std::nullopt;
  }

  // Looks up a feature-value pair by name; throws DataError naming the
  // offending part.
  Concept concept_named(std::string_view feature, std::string_view value) const {
    const auto attribute = find_attribute(feature);
    if (!attribute) {
      throw DataError("unknown feature \"" + std::string(feature) + "\"");
    }
    const auto& values = attributes_[*attribute].values;
    auto it = std::find(values.begin(), values.end(), value);
    if (it == values.end()) {
      throw DataError("unknown value \"" + std::string(value) +
                      "\" for feature \"" + std::string(feature) + "\"");
    }
    return Concept{*attribute, static_cast<std::size_t>(it - values.begin())};
  }

  const std::string& feature_name(Concept c) const {
    return attributes_.at(c.attribute).name;
  }
  const std::string& value_name(Concept c) const {
    return attributes_.at(c.attribute).values.at(c.value);
  }
  // "feature:value"
  std::string concept_name(Concept c) const {
    return feature_name(c) + ":" + value_name(c);
  }

  nlohmann::json to_json() const {
    nlohmann::json attributes = nlohmann::json::array();
    for (const Attribute& attribute : attributes_) {
      attributes.push_back({{"name", attribute.name},
                            {"values", attribute.values}});
    }
    return nlohmann::json{{"attributes", std::move(attributes)}};
  }

  friend bool operator==(const AttributeSchema& a, const AttributeSchema& b) {
    return a.attributes_ == b.attributes_;
  }

 private:
  std::vector<Attribute> attributes_;
  std::vector<std::size_t> offsets_;
  std::size_t concept_count_ = 0;
  std::string name_;
  bool builtin_ = false;
};

inline const std::vector<std::string>& builtin_schema_names() {
  static const std::vector<std::string> names = {"shape", "thing"};
  return names;
}

// The symbolic abstraction of the two evaluation worlds: "shape" has shape,
// color and horizontal/vertical position (5, 6, 3, 3 values) and "thing" has
// five attributes of ten values each.
inline AttributeSchema builtin_schema(std::string_view name) {
  if (name == "shape") {
    return AttributeSchema(
        {{"shape", {"circle", "ellipse", "square", "rectangle", "triangle"}},
         {"color", {"red", "blue", "green", "yellow", "white", "gray"}},
         {"x_pos", {"left", "middle", "right"}},
         {"y_pos", {"top", "center", "bottom"}}},
        "shape", true);
  }
  if (name == "thing") {
    std::vector<Attribute> attributes;
    for (int f = 1; f <= 5; ++f) {
      Attribute attribute{"f" + std::to_string(f), {}};
      for (int v = 0; v < 10; ++v) attribute.values.push_back("v" + std::to_string(v));
      attributes.push_back(std::move(attribute));
    }
    return AttributeSchema(std::move(attributes), "thing", true);
  }
  throw DataError("unknown built-in schema \"" + std::string(name) + "\"");
}

// Accepts either {"builtin": "shape"|"thing"} or
// {"attributes": [{"name": str, "values": [str, ...]}, ...]}.
inline AttributeSchema build_schema(const nlohmann::json& doc) {
  if (!doc.is_object()) throw DataError("schema document must be an object");
  if (auto it = doc.find("builtin"); it != doc.end()) {
    if (!it->is_string()) throw DataError("\"builtin\" must be a string");
    return builtin_schema(it->get<std::string>());
  }
  auto it = doc.find("attributes");
  if (it == doc.end() || !it->is_array()) {
    throw DataError("schema document needs an \"attributes\" array");
  }
  std::vector<Attribute> attributes;
  for (const auto& entry : *it) {
    if (!entry.is_object() || !entry.contains("name") ||
        !entry.contains("values") || !entry["name"].is_string() ||
        !entry["values"].is_array()) {
      throw DataError("each attribute needs a string \"name\" and a \"values\" array");
    }
    Attribute attribute{entry["name"].get<std::string>(), {}};
    for (const auto& value : entry["values"]) {
      if (!value.is_string()) {
        throw DataError("values of attribute \"" + attribute.name +
                        "\" must be strings");
      }
      attribute.values.push_back(value.get<std::string>());
    }
    attributes.push_back(std::move(attribute));
  }
  return AttributeSchema(std::move(attributes));
}

// A built-in name, or the path of a JSON schema document.
inline AttributeSchema load_schema(const std::string& selector) {
  for (const auto& name : builtin_schema_names()) {
    if (selector == name) return builtin_schema(name);
  }
  std::ifstream in(selector);
  if (!in) {
    throw DataError("\"" + selector +
                    "\" is neither a built-in schema nor a readable file");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(selector + ": " + e.what());
  }
  return build_schema(doc);
}

struct ObjectInstance {
  std::vector<std::size_t> values;  // value index per schema attribute

  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

inline bool is_valid_object(const AttributeSchema& schema,
                            const ObjectInstance& object) {
  if (object.values.size() != schema.attribute_count()) return false;
  for (std::size_t i = 0; i < object.values.size(); ++i) {
    if (object.values[i] >= schema.value_count(i)) return false;
  }
  return true;
}

// Conjunction of concepts over distinct features, kept sorted in schema order
// so that equality is set equality.
class LabelingRule {
 public:
  LabelingRule() = default;

  static LabelingRule make(const AttributeSchema& schema,
                           std::vector<Concept> concepts) {
    if (concepts.empty()) throw DataError("labeling rule has no concepts");
    std::sort(concepts.begin(), concepts.end());
    for (std::size_t i = 0; i < concepts.size(); ++i) {
      if (!schema.contains(concepts[i])) {
        throw DataError("labeling rule concept outside the schema");
      }
      if (i > 0 && concepts[i].attribute == concepts[i - 1].attribute) {
        throw DataError("labeling rule uses feature \"" +
                        schema.feature_name(concepts[i]) +
                        "\" twice; rules are conjunctions over distinct features");
      }
    }
    LabelingRule rule;
    rule.concepts_ = std::move(concepts);
    return rule;
  }

  std::span<const Concept> concepts() const { return concepts_; }
  std::size_t size() const { return concepts_.size(); }

  bool contains(Concept c) const {
    return std::binary_search(concepts_.begin(), concepts_.end(), c);
  }

  friend auto operator<=>(const LabelingRule&, const LabelingRule&) = default;

 private:
  std::vector<Concept> concepts_;
};

// Every rule fixing exactly `length` distinct features, ordered
// lexicographically by the schema positions of their concepts.
inline std::vector<LabelingRule> enumerate_rules(const AttributeSchema& schema,
                                                 std::size_t length) {
  if (length < 1 || length > schema.attribute_count()) {
    throw InvalidArgument("rule length " + std::to_string(length) +
                          " outside [1, " +
                          std::to_string(schema.attribute_count()) + "]");
  }
  std::vector<LabelingRule> rules;
  std::vector<Concept> prefix;
  prefix.reserve(length);
  const std::size_t n = schema.attribute_count();

  auto extend = [&](auto&& self, std::size_t first_attribute) -> void {
    if (prefix.size() == length) {
      rules.push_back(LabelingRule::make(schema, prefix));
      return;
    }
    // Leave room for the features still to choose.
    const std::size_t remaining = length - prefix.size();
    for (std::size_t a = first_attribute; a + remaining <= n; ++a) {
      for (std::size_t v = 0; v < schema.value_count(a); ++v) {
        prefix.push_back(Concept{a, v});
        self(self, a + 1);
        prefix.pop_back();
      }
    }
  };
  extend(extend, 0);
  return rules;
}

inline bool rule_satisfies(const LabelingRule& rule,
                           const ObjectInstance& object) {
  for (const Concept& c : rule.concepts()) {
    if (c.attribute >= object.values.size() ||
        object.values[c.attribute] != c.value) {
      return false;
    }
  }
  return true;
}

struct Turn {
  LabelingRule rule;
  std::vector<ObjectInstance> targets;
  std::vector<ObjectInstance> distractors;

  friend bool operator==(const Turn&, const Turn&) = default;
};

inline ObjectInstance sample_object(const AttributeSchema& schema, Rng& rng) {
  ObjectInstance object;
  object.values.reserve(schema.attribute_count());
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    object.values.push_back(uniform_index(rng, schema.value_count(a)));
  }
  return object;
}

// Targets fix the rule's features and draw the rest uniformly; distractors
// are uniform objects conditioned on failing the rule (rejection sampling:
// a non-empty rule is satisfied by at most half the world).
inline Turn sample_turn(const AttributeSchema& schema, const LabelingRule& rule,
                        std::size_t n_targets, std::size_t n_distractors,
                        Rng& rng) {
  if (n_targets == 0 || n_distractors == 0) {
    throw InvalidArgument("a turn needs at least one target and one distractor");
  }
  if (rule.size() == 0) {
    throw InvalidArgument("an empty rule admits no distractors");
  }
  for (const Concept& c : rule.concepts()) {
    if (!schema.contains(c)) throw InvalidArgument("rule outside the schema");
  }
  Turn turn{rule, {}, {}};
  turn.targets.reserve(n_targets);
  for (std::size_t t = 0; t < n_targets; ++t) {
    ObjectInstance object = sample_object(schema, rng);
    for (const Concept& c : rule.concepts()) object.values[c.attribute] = c.value;
    turn.targets.push_back(std::move(object));
  }
  turn.distractors.reserve(n_distractors);
  while (turn.distractors.size() < n_distractors) {
    ObjectInstance object = sample_object(schema, rng);
    if (!rule_satisfies(rule, object)) turn.distractors.push_back(std::move(object));
  }
  return turn;
}

// Concatenated one-hot blocks, one per attribute.
inline std::vector<double> encode_object(const AttributeSchema& schema,
                                         const ObjectInstance& object) {
  std::vector<double> encoding(schema.concept_count(), 0.0);
  for (std::size_t a = 0; a < object.values.size(); ++a) {
    encoding[schema.concept_index(Concept{a, object.values[a]})] = 1.0;
  }
  return encoding;
}

// Multi-hot over the concept vocabulary.
inline std::vector<double> encode_rule(const AttributeSchema& schema,
                                       const LabelingRule& rule) {
  std::vector<double> encoding(schema.concept_count(), 0.0);
  for (const Concept& c : rule.concepts()) encoding[schema.concept_index(c)] = 1.0;
  return encoding;
}

}  // namespace ecbm

#endif  // ECBM_WORLD_HPP_

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

#ifndef ECBM_TOOLS_CLI_HPP_
#define ECBM_TOOLS_CLI_HPP_

// The `ecbm` command: generate, eval, sensitivity, compare.
//
// Exit status 0 on success, 1 on a usage error (bad flag or flag value),
// 2 on a data error (missing or malformed file). Payload goes to `out`,
// diagnostics to `err`.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecbm/ecbm.hpp"

namespace ecbm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

struct Config {
  std::string schema;
  std::string sender;
  std::size_t rule_length = 1;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string corpus;
  std::string metrics = "cbm,ami,topsim";
  std::string out;
  std::string dot;
  std::size_t chunk = 100;
  std::vector<std::string> reports;
};

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void run_generate(const Config& c, std::ostream& out) {
  const AttributeSchema schema = load_schema(c.schema);
  const SenderModel model = SenderModel::parse(c.sender);
  const Corpus corpus = generate_corpus(schema, model, c.rule_length, c.samples, c.seed);
  if (c.out.empty()) {
    write_corpus(out, corpus);
  } else {
    atomic_write(c.out, corpus_to_string(corpus));
  }
}

inline void run_eval(const Config& c, std::ostream& out, std::ostream& err) {
  EvalOptions options;
  options.metrics = MetricSet::parse(c.metrics);
  options.seed = c.seed;
  options.corpus_label = c.corpus;
  if (!c.dot.empty() && !options.metrics.cbm) {
    throw InvalidArgument("--dot needs the cbm metric");
  }
  const Corpus corpus = read_corpus(c.corpus);
  const Evaluation evaluation = evaluate(corpus, options);
  for (const std::string& warning : evaluation.warnings) err << "warning: " << warning << "\n";
  const std::string json = to_json(evaluation.report);
  if (!c.dot.empty()) {
    atomic_write(c.dot, to_dot(evaluation.cbm->translation, evaluation.cbm->graph,
                               corpus.schema));
  }
  if (c.out.empty()) {
    out << json;
  } else {
    atomic_write(c.out, json);
    out << to_table(evaluation.report);
  }
}

inline void run_sensitivity(const Config& c, std::ostream& out) {
  const Corpus corpus = read_corpus(c.corpus);
  SensitivitySeries series;
  try {
    series = sensitivity_sweep(corpus, c.chunk);
  } catch (const InvalidArgument& e) {
    throw DataError(c.corpus + ": " + e.what());
  }
  const std::string json = to_json(series);
  if (c.out.empty()) {
    out << json;
  } else {
    atomic_write(c.out, json);
  }
}

inline void run_compare(const Config& c, std::ostream& out) {
  std::vector<EvalReport> reports;
  for (const std::string& path : c.reports) {
    try {
      reports.push_back(report_from_json(slurp(path)));
    } catch (const DataError& e) {
      throw DataError(path + ": " + e.what());
    }
  }
  out << to_table(compare(reports));
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Compositionality metrics for emergent-communication corpora", "ecbm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* generate = app.add_subcommand("generate", "Write a synthetic corpus as JSONL");
  generate->add_option("--schema", c.schema, "Built-in schema name or schema JSON path")
      ->required();
  generate->add_option("--sender", c.sender,
                       "perfect | synonym:K | ambiguous:G | random:V | noisy:EPS [,shuffled]")
      ->required();
  generate->add_option("--rule-len", c.rule_length, "Concepts per labeling rule")->required();
  generate->add_option("--samples", c.samples, "Number of records")->required();
  generate->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", c.out, "Output path (default: stdout)");

  auto* eval = app.add_subcommand("eval", "Score a corpus and emit a JSON report");
  eval->add_option("--corpus", c.corpus, "Corpus JSONL path")->required();
  eval->add_option("--metrics", c.metrics, "Comma-separated subset of cbm,ami,topsim")
      ->capture_default_str();
  eval->add_option("--seed", c.seed, "Seed recorded in the report provenance")
      ->capture_default_str();
  eval->add_option("--out", c.out, "Report path; the summary table then goes to stdout");
  eval->add_option("--dot", c.dot, "Write the translation graph as Graphviz DOT");

  auto* sensitivity =
      app.add_subcommand("sensitivity", "CBM over growing prefixes and disjoint chunks");
  sensitivity->add_option("--corpus", c.corpus, "Corpus JSONL path")->required();
  sensitivity->add_option("--chunk", c.chunk, "Records per chunk")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sensitivity->add_option("--out", c.out, "Output path (default: stdout)");

  auto* comparison = app.add_subcommand("compare", "Tabulate several JSON reports");
  comparison->add_option("reports", c.reports, "Report JSON paths")->required();

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (generate->parsed()) detail::run_generate(c, out);
    if (eval->parsed()) detail::run_eval(c, out, err);
    if (sensitivity->parsed()) detail::run_sensitivity(c, out);
    if (comparison->parsed()) detail::run_compare(c, out);
  } catch (const InvalidArgument& e) {
    err << "ecbm: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "ecbm: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}

}  // namespace ecbm::cli

#endif  // ECBM_TOOLS_CLI_HPP_

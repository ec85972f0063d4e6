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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "ecbm/pipeline.hpp"
#include "oracles.hpp"

namespace ecbm {
namespace {

namespace fs = std::filesystem;

class Pipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ecbm_pipeline_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(Pipeline, GenerateIsByteStable) {
  const auto a = (dir_ / "a.jsonl").string();
  const auto b = (dir_ / "b.jsonl").string();
  EXPECT_EQ(generate_file("thing", "synonym:2", 2, 100, 7, a), a);
  generate_file("thing", "synonym:2", 2, 100, 7, b);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(fs::exists(a + ".tmp"));
}

TEST_F(Pipeline, GenerateAmbiguousThingVocabulary) {
  const auto path = (dir_ / "amb.jsonl").string();
  generate_file("thing", "ambiguous:2", 5, 1000, 1, path);
  EXPECT_EQ(corpus_stats(read_corpus(path)).unique_words, 25u);
}

TEST_F(Pipeline, GenerateRejectsBadSender) {
  EXPECT_THROW(generate_file("shape", "perfect:2", 1, 10, 0, (dir_ / "x").string()),
               InvalidArgument);
  EXPECT_FALSE(fs::exists(dir_ / "x"));
}

TEST_F(Pipeline, EvaluatePerfectCorpus) {
  const auto path = (dir_ / "p.jsonl").string();
  generate_file("shape", "perfect", 1, 1000, 7, path);
  const auto report = report_from_json(evaluate_file(path));
  ASSERT_TRUE(report.cbm);
  EXPECT_EQ(report.cbm->cbm, 1.0);
  ASSERT_TRUE(report.ami);
  EXPECT_EQ(report.ami->ami, 1.0);
  ASSERT_TRUE(report.topsim);
  EXPECT_NEAR(*report.topsim, 1.0, 1e-9);
  EXPECT_EQ(report.provenance.corpus, path);
}

TEST_F(Pipeline, EvaluateMissingFileNamesPath) {
  const auto path = (dir_ / "missing.jsonl").string();
  try {
    evaluate_file(path);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
}

TEST_F(Pipeline, MetricSelection) {
  const auto path = (dir_ / "p.jsonl").string();
  generate_file("shape", "perfect", 1, 200, 1, path);
  const auto report = report_from_json(evaluate_file(path, MetricSet::parse("topsim")));
  EXPECT_FALSE(report.cbm);
  EXPECT_FALSE(report.ami);
  EXPECT_FALSE(report.translation);
  EXPECT_TRUE(report.topsim);
  EXPECT_EQ(report.stats.records, 200u);
  EXPECT_THROW(MetricSet::parse("cbm,bleu"), InvalidArgument);
  EXPECT_THROW(MetricSet::parse(""), InvalidArgument);
}

TEST_F(Pipeline, TopSimWarningWhenUndefined) {
  EvalOptions options;
  const Evaluation e = evaluate(oracle::two_record_corpus(), options);
  EXPECT_FALSE(e.report.topsim);
  ASSERT_EQ(e.warnings.size(), 1u);
  EXPECT_NE(e.warnings[0].find("topsim"), std::string::npos);
}

TEST_F(Pipeline, AtomicWriteReplaces) {
  const auto path = dir_ / "out.json";
  atomic_write(path, "one");
  atomic_write(path, "two");
  EXPECT_EQ(slurp(path), "two");
  EXPECT_THROW(atomic_write(dir_ / "no" / "such" / "dir.json", "x"), DataError);
}

}  // namespace
}  // namespace ecbm

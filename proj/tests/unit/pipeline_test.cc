// Copyright 2026 The CDEE Authors.
//
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

#include "cdee/pipeline.h"

#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "cdee/corpus.h"
#include "cdee/text.h"
#include "test_util.h"

namespace cdee {
namespace {

namespace fs = std::filesystem;

PipelineConfig FigureOne(const std::string& scratch) {
  PipelineConfig config = LoadPipelineConfig(testing::TestData("figure1/pipeline.conf"));
  config.output_dir = testing::ScratchDir(scratch);
  return config;
}

std::string Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) == std::string::npos ? "missing: " + needle : "";
}

TEST(PipelineTest, ConfigParsesEveryKey) {
  PipelineConfig c = ParsePipelineConfigText(
      "# comment\n"
      "corpus = data/c.jsonl   # trailing comment\n"
      "coref_threshold = 0.75\n"
      "strategy = max-count\n"
      "date_order = dmy\n"
      "workers = 4\n"
      "relaxed_eval = true\n"
      "weights = 1, 0.5, 3, -1\n",
      "/base");
  EXPECT_EQ(c.corpus, fs::path("/base/data/c.jsonl"));
  EXPECT_EQ(c.output_dir, fs::path("/base/cdee-out"));
  EXPECT_EQ(c.coref_threshold, 0.75);
  EXPECT_EQ(c.strategy, MergeStrategy::kMaxCount);
  EXPECT_EQ(c.date_order, DateOrder::kDayFirst);
  EXPECT_EQ(c.workers, 4u);
  EXPECT_TRUE(c.relaxed_eval);
  EXPECT_EQ(c.weights.w_type, 0.5);
  EXPECT_EQ(c.weights.bias, -1.0);
}

TEST(PipelineTest, ConfigErrorsNameTheLine) {
  for (const char* bad : {"nonsense\n", "colour = red\n", "strategy = vote\n", "workers = 0\n",
                          "workers = 1.5\n", "relaxed_eval = maybe\n", "weights = 1,2\n",
                          "coref_threshold = high\n"}) {
    try {
      ParsePipelineConfigText(std::string("\n") + bad, "/b", "x.conf");
      ADD_FAILURE() << bad;
    } catch (const ValidationError& e) {
      EXPECT_EQ(std::string(e.what()).rfind("x.conf:2: ", 0), 0u) << e.what();
    }
  }
}

TEST(PipelineTest, CheckRejectsBadSettings) {
  PipelineConfig c = FigureOne("check");
  EXPECT_NO_THROW(c.Check());
  PipelineConfig t = c;
  t.coref_threshold = 1.5;
  EXPECT_THROW(t.Check(), ValidationError);
  PipelineConfig w = c;
  w.workers = 0;
  EXPECT_THROW(w.Check(), ValidationError);
  PipelineConfig p = c;
  p.aliases = "/does/not/exist.tsv";
  EXPECT_THROW(p.Check(), ValidationError);
  PipelineConfig none = c;
  none.corpus.clear();
  EXPECT_THROW(none.Check(), ValidationError);
  EXPECT_THROW(LoadPipelineConfig("/does/not/exist.conf"), ValidationError);
}

TEST(PipelineTest, FigureOneEndToEnd) {
  PipelineConfig config = FigureOne("figure1");
  ASSERT_TRUE(RunPipeline(config));
  std::vector<ConceptEvent> events =
      ReadConceptEvents(config.output_dir / std::string(kConceptEventsFile));
  ASSERT_EQ(events.size(), 1u);
  const ConceptEvent& e = events[0];
  EXPECT_EQ(e.event_type, EventType::kAttack);
  EXPECT_EQ(e.provenance, (std::vector<std::string>{"d1", "d2", "d3"}));
  std::map<std::string, std::string> args;
  for (const Argument& a : e.arguments) args[*a.canonical_role] = *a.canonical_entity;
  EXPECT_EQ(args, (std::map<std::string, std::string>{{"attacker", "Coalition Forces"},
                                                     {"date", "1991-01-17"},
                                                     {"location", "Baghdad"},
                                                     {"target", "Iraq"}}));
  std::string json = ReadFile(config.output_dir / std::string(kEvalJsonFile));
  EXPECT_EQ(Contains(json, "\"conll_f1\": 1.0"), "");
  EXPECT_TRUE(fs::exists(config.output_dir / std::string(kEvalTableFile)));
  EXPECT_TRUE(fs::exists(config.output_dir / std::string(kAddedRolesFile)));
}

std::map<std::string, std::string> Artifacts(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    out[entry.path().filename().string()] = ReadFile(entry.path());
  }
  return out;
}

TEST(PipelineTest, WorkerCountDoesNotChangeOutput) {
  fs::path corpus = testing::ScratchDir("workers-corpus") / "corpus.jsonl";
  testing::ReplicateCorpus(testing::TestData("figure1/corpus.jsonl"), "gulf_war", 24, corpus);
  PipelineConfig one = FigureOne("workers-1");
  one.corpus = corpus;
  PipelineConfig eight = one;
  eight.workers = 8;
  eight.output_dir = testing::ScratchDir("workers-8");
  RunPipeline(one);
  RunPipeline(eight);
  std::map<std::string, std::string> a = Artifacts(one.output_dir);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_EQ(a, Artifacts(eight.output_dir));
  EXPECT_EQ(ReadConceptEvents(one.output_dir / std::string(kConceptEventsFile)).size(), 24u);
}

TEST(PipelineTest, ThresholdOneMergesNothing) {
  PipelineConfig config = FigureOne("threshold-one");
  config.coref_threshold = 1.0;
  RunPipeline(config);
  EXPECT_TRUE(ReadConceptEvents(config.output_dir / std::string(kConceptEventsFile)).empty());
}

TEST(PipelineTest, NoGoldMeansNoEvaluation) {
  fs::path dir = testing::ScratchDir("no-gold-corpus");
  std::string text = ReadFile(testing::TestData("figure1/corpus.jsonl"));
  std::string kept;
  for (const std::string& line : Split(text, '\n')) {
    if (!line.empty() && line.find("gold_concept_event") == std::string::npos) kept += line + "\n";
  }
  WriteFile(dir / "corpus.jsonl", kept);
  PipelineConfig config = FigureOne("no-gold");
  config.corpus = dir / "corpus.jsonl";
  EXPECT_FALSE(RunPipeline(config));
  EXPECT_FALSE(fs::exists(config.output_dir / std::string(kEvalJsonFile)));
  EXPECT_EQ(ReadConceptEvents(config.output_dir / std::string(kConceptEventsFile)).size(), 1u);
}

TEST(PipelineTest, MissingInputNamesTheProducer) {
  PipelineConfig config = FigureOne("missing");
  try {
    RunResolveCommand(config);
    FAIL();
  } catch (const Error& e) {
    std::string msg = e.what();
    EXPECT_EQ(msg.rfind("resolve: ", 0), 0u) << msg;
    EXPECT_EQ(Contains(msg, "run the normalize stage first"), "");
  }
  try {
    RunNormalizeCommand(config);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(Contains(e.what(), "run the coref stage first"), "");
  }
  try {
    RunEvalCommand(config);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(Contains(e.what(), "run the resolve stage first"), "");
  }
}

TEST(PipelineTest, ChainedStagesEqualTheFullRun) {
  PipelineConfig run = FigureOne("chain-run");
  PipelineConfig chained = FigureOne("chain-steps");
  RunPipeline(run);
  RunCorefCommand(chained);
  RunNormalizeCommand(chained);
  RunResolveCommand(chained);
  RunEvalCommand(chained);
  EXPECT_EQ(Artifacts(run.output_dir), Artifacts(chained.output_dir));
}

TEST(PipelineTest, ParallelForRunsEveryIndexAndRethrowsTheFirstFailure) {
  for (size_t workers : {1u, 3u, 16u}) {
    std::vector<std::atomic<int>> hits(50);
    ParallelFor(50, workers, [&](size_t i) { ++hits[i]; });
    for (auto& h : hits) ASSERT_EQ(h.load(), 1);

    std::atomic<int> ran{0};
    try {
      ParallelFor(20, workers, [&](size_t i) {
        ++ran;
        if (i == 7 || i == 13) throw std::runtime_error("fail " + std::to_string(i));
      });
      FAIL();
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "fail 7");
    }
    EXPECT_EQ(ran.load(), 20);
  }
  EXPECT_NO_THROW(ParallelFor(0, 4, [](size_t) { throw std::runtime_error("never"); }));
}

TEST(PipelineTest, EdagSummaryGroupsByType) {
  std::map<EventType, RoleOrder> orders =
      LoadRoleOrders(testing::ShippedData("role_orders.tsv"));
  ConceptEvent a;
  a.event_type = EventType::kAttack;
  a.arguments = {testing::CanonArg("attacker", "X", ""), testing::CanonArg("co-pilot", "Y", "")};
  ConceptEvent b = a;
  b.arguments = {testing::CanonArg("attacker", "X", "")};
  std::vector<EdagSummary> s = SummarizeEdags({a, b}, orders);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].records, 2u);
  EXPECT_EQ(s[0].skipped_roles, 1u);
  EXPECT_EQ(s[0].paths.size(), 1u);
  EXPECT_FALSE(EdagSummaryJson(s).empty());
}

}  // namespace
}  // namespace cdee

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

#include "cdee/coref.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cdee/corpus.h"
#include "oracles.h"
#include "test_util.h"

namespace cdee {
namespace {

using testing::Arg;
using testing::Mention;

double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<MentionEvent> Ids(std::vector<std::string> ids) {
  std::vector<MentionEvent> out;
  for (auto& id : ids) out.push_back(Mention(id, "d", EventType::kAttack, "attack"));
  return out;
}

PairScoreTable Table(std::vector<PairScore> scores) { return PairScoreTable(scores); }

std::vector<std::vector<std::string>> Sorted(const std::vector<CorefCluster>& clusters) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : clusters) out.push_back(c.mention_ids);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(CorefTest, IdenticalMentionsScoreAboveHalf) {
  MentionEvent a = Mention("a", "d1", EventType::kAttack, "attack", {Arg("attacker", "Rebels", "d1")});
  MentionEvent b = a;
  b.id = "b";
  PairScore s = ScorePair(a, b);
  EXPECT_DOUBLE_EQ(s.p, Logistic(2.0 + 1.0 + 2.0 - 2.5));
  EXPECT_GT(s.p, 0.5);
}

TEST(CorefTest, DisjointMentionsScoreBelowHalf) {
  MentionEvent a = Mention("a", "d1", EventType::kAttack, "attack", {Arg("attacker", "X", "d1")});
  MentionEvent b = Mention("b", "d2", EventType::kSport, "final", {Arg("winner", "Y", "d2")});
  EXPECT_DOUBLE_EQ(ScorePair(a, b).p, Logistic(-2.5));
}

TEST(CorefTest, TriggerAndTypeWithoutArgumentOverlap) {
  MentionEvent a = Mention("a", "d1", EventType::kAttack, "Attack", {Arg("attacker", "X", "d1")});
  MentionEvent b = Mention("b", "d2", EventType::kAttack, "attack ", {Arg("target", "Y", "d2")});
  // Closed form with the default weights: 2 + 1 + 0 - 2.5 = 0.5.
  EXPECT_DOUBLE_EQ(ScorePair(a, b).p, 1.0 / (1.0 + std::exp(-0.5)));
}

TEST(CorefTest, ArgumentOverlapIsJaccardOfFoldedSurfaces) {
  MentionEvent a = Mention("a", "d1", EventType::kAttack, "x",
                           {Arg("r", "Coalition Forces", "d1"), Arg("r", "Iraq", "d1")});
  MentionEvent b = Mention("b", "d2", EventType::kSport, "y",
                           {Arg("r", "coalition  forces", "d2"), Arg("r", "Baghdad", "d2")});
  EXPECT_DOUBLE_EQ(ScorePair(a, b).p, Logistic(2.0 / 3.0 - 2.5));
}

TEST(CorefTest, ScoreIsSymmetricAndOrdered) {
  MentionEvent a = Mention("z", "d1", EventType::kAttack, "attack", {Arg("r", "p", "d1")});
  MentionEvent b = Mention("a", "d2", EventType::kAward, "attack", {Arg("r", "p", "d2"), Arg("r", "q", "d2")});
  PairScore ab = ScorePair(a, b), ba = ScorePair(b, a);
  EXPECT_EQ(ab, ba);
  EXPECT_EQ(ab.a, "a");
  EXPECT_GT(ab.p, 0.0);
  EXPECT_LT(ab.p, 1.0);
}

TEST(CorefTest, PairScoreRejectsBadInput) {
  EXPECT_THROW(MakePairScore("a", "a", 0.5), Error);
  EXPECT_THROW(MakePairScore("a", "b", 1.2), Error);
  EXPECT_THROW(MakePairScore("a", "b", -0.1), Error);
  EXPECT_EQ(MakePairScore("b", "a", 0.3).a, "a");
}

TEST(CorefTest, ScoreFilesParseAndRejectConflicts) {
  auto scores = ParseScoresText("a b 0.9\nb a 0.9\n# comment\nb c 0.25\n");
  PairScoreTable t(scores);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_DOUBLE_EQ(t.Get("c", "b"), 0.25);
  EXPECT_DOUBLE_EQ(t.Get("a", "c"), 0.0);
  EXPECT_THROW(ParseScoresText("a b 1.2\n"), Error);
  try {
    PairScoreTable(ParseScoresText("a b 0.9\nb a 0.8\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("conflicting pair"), std::string::npos);
  }
  EXPECT_EQ(ParseScoresText(SerializeScoresText(t.ToVector())), t.ToVector());
}

TEST(CorefTest, ScoreFileFromDisk) {
  auto path = testing::ScratchDir("scores") / "s.txt";
  WriteFile(path, "m1 m2 0.75\n");
  auto scores = LoadScores(path);
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_DOUBLE_EQ(scores[0].p, 0.75);
}

TEST(CorefTest, ClusterExtremes) {
  auto ms = Ids({"a", "b", "c", "d"});
  std::vector<PairScore> ones, zeros;
  for (size_t i = 0; i < ms.size(); ++i) {
    for (size_t j = i + 1; j < ms.size(); ++j) {
      ones.push_back(MakePairScore(ms[i].id, ms[j].id, 1.0));
      zeros.push_back(MakePairScore(ms[i].id, ms[j].id, 0.0));
    }
  }
  EXPECT_EQ(Sorted(Cluster(ms, Table(ones))), (std::vector<std::vector<std::string>>{{"a", "b", "c", "d"}}));
  EXPECT_EQ(Cluster(ms, Table(zeros)).size(), 4u);
}

TEST(CorefTest, ThreeMentionLinkageTrace) {
  auto ms = Ids({"1", "2", "3"});
  auto t = Table({MakePairScore("1", "2", 0.9), MakePairScore("1", "3", 0.2),
                  MakePairScore("2", "3", 0.2)});
  EXPECT_EQ(Sorted(Cluster(ms, t)), (std::vector<std::vector<std::string>>{{"1", "2"}, {"3"}}));
}

// Of the five partitions of {1,2,3}, {1,2},{3} maximizes the margin between
// the lowest intra-cluster score and the highest inter-cluster score.
TEST(CorefTest, ThreeMentionPartitionBruteForce) {
  std::map<std::pair<std::string, std::string>, double> p = {
      {{"1", "2"}, 0.9}, {{"1", "3"}, 0.2}, {{"2", "3"}, 0.2}};
  std::vector<std::vector<std::vector<std::string>>> partitions = {
      {{"1"}, {"2"}, {"3"}}, {{"1", "2"}, {"3"}}, {{"1", "3"}, {"2"}},
      {{"1"}, {"2", "3"}}, {{"1", "2", "3"}}};
  auto margin = [&](const std::vector<std::vector<std::string>>& part) {
    double intra = 1.0, inter = 0.0;
    for (const auto& [pair, s] : p) {
      bool same = false;
      for (const auto& c : part) {
        same |= std::count(c.begin(), c.end(), pair.first) && std::count(c.begin(), c.end(), pair.second);
      }
      if (same) intra = std::min(intra, s); else inter = std::max(inter, s);
    }
    return intra - inter;
  };
  size_t best = 0;
  for (size_t i = 1; i < partitions.size(); ++i) {
    if (margin(partitions[i]) > margin(partitions[best])) best = i;
  }
  auto ms = Ids({"1", "2", "3"});
  auto t = Table({MakePairScore("1", "2", 0.9), MakePairScore("1", "3", 0.2),
                  MakePairScore("2", "3", 0.2)});
  EXPECT_EQ(Sorted(Cluster(ms, t)), partitions[best]);
}

TEST(CorefTest, TiesMergeLowestIdPairFirst) {
  auto ms = Ids({"a", "b", "c"});
  // Every pair ties at 0.8; (a, b) merges first, then c joins at average 0.8.
  auto t = Table({MakePairScore("a", "b", 0.8), MakePairScore("a", "c", 0.8),
                  MakePairScore("b", "c", 0.8)});
  EXPECT_EQ(Cluster(ms, t).size(), 1u);
  auto t2 = Table({MakePairScore("a", "b", 0.7), MakePairScore("c", "d", 0.7),
                   MakePairScore("a", "c", 0.7)});
  // a-b and a-c tie; a-b wins by id, then {a,b}-c averages 0.35 and stops;
  // c-d then merges.
  EXPECT_EQ(Sorted(Cluster(Ids({"a", "b", "c", "d"}), t2)),
            (std::vector<std::vector<std::string>>{{"a", "b"}, {"c", "d"}}));
}

TEST(CorefTest, ClusterMatchesNaiveLinkageOracle) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 2 + trial % 7;
    std::vector<std::string> ids;
    for (size_t i = 0; i < n; ++i) ids.push_back("m" + std::to_string(i));
    std::map<std::pair<std::string, std::string>, double> p;
    std::vector<PairScore> scores;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        // Quantized scores make ties common.
        double s = std::round(prob(rng) * 4) / 4;
        p[{ids[i], ids[j]}] = s;
        scores.push_back(MakePairScore(ids[i], ids[j], s));
      }
    }
    double threshold = (trial % 3) * 0.25 + 0.25;
    auto got = Sorted(Cluster(Ids(ids), Table(scores), threshold));
    ASSERT_EQ(got, oracle::NaiveAverageLinkage(ids, p, threshold)) << "trial " << trial;
    // A partition of the input.
    size_t total = 0;
    for (const auto& c : got) total += c.size();
    ASSERT_EQ(total, n);
  }
}

TEST(CorefTest, RetainIsStrict) {
  auto ms = Ids({"a", "b"});
  auto t = Table({MakePairScore("a", "b", 0.5)});
  auto clusters = Cluster(ms, t);
  EXPECT_TRUE(Retain(clusters, t).empty());
}

TEST(CorefTest, RetainDropsLoneSingleton) {
  std::vector<CorefCluster> one = {{{"a"}}};
  EXPECT_TRUE(Retain(one, PairScoreTable()).empty());
}

TEST(CorefTest, RetainKeepsChainMembers) {
  auto ms = Ids({"a", "b", "c"});
  auto t = Table({MakePairScore("a", "b", 0.9), MakePairScore("b", "c", 0.6)});
  auto retained = Retain(Cluster(ms, t), t);
  size_t kept = 0;
  for (const auto& c : retained) kept += c.mention_ids.size();
  EXPECT_EQ(kept, 3u);
}

TEST(CorefTest, RetainIsMonotoneInThreshold) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto ms = Ids({"a", "b", "c", "d", "e", "f"});
    std::vector<PairScore> scores;
    for (size_t i = 0; i < ms.size(); ++i) {
      for (size_t j = i + 1; j < ms.size(); ++j) {
        scores.push_back(MakePairScore(ms[i].id, ms[j].id, prob(rng)));
      }
    }
    PairScoreTable t(scores);
    auto clusters = Cluster(ms, t, 0.3);
    size_t previous = SIZE_MAX;
    for (double th = 0.0; th <= 1.0; th += 0.05) {
      size_t kept = 0;
      for (const auto& c : Retain(clusters, t, th)) kept += c.mention_ids.size();
      ASSERT_LE(kept, previous);
      previous = kept;
    }
  }
}

TEST(CorefTest, RetainWithZeroThresholdIsIdentityOnPositiveScores) {
  auto ms = Ids({"a", "b", "c"});
  auto t = Table({MakePairScore("a", "b", 0.1), MakePairScore("a", "c", 0.2),
                  MakePairScore("b", "c", 0.3)});
  auto clusters = Cluster(ms, t, 0.0);
  EXPECT_EQ(Retain(clusters, t, 0.0), clusters);
}

TEST(CorefTest, ThresholdOutsideUnitIntervalIsRejected) {
  EXPECT_THROW(Cluster(Ids({"a"}), PairScoreTable(), 1.5), Error);
  EXPECT_THROW(Retain({}, PairScoreTable(), -0.1), Error);
}

}  // namespace
}  // namespace cdee

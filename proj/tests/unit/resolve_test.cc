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

#include "cdee/resolve.h"

#include <gtest/gtest.h>

#include <random>

#include "cdee/corpus.h"
#include "test_util.h"

namespace cdee {
namespace {

using testing::CanonArg;
using testing::Mention;

Argument WithDocs(Argument a, std::vector<std::string> provenance) {
  a.provenance = std::move(provenance);
  return a;
}

TEST(ResolveTest, DedupCollapsesAndUnionsProvenance) {
  std::vector<Argument> args = {CanonArg("winner", "Team A", "d1"),
                                CanonArg("winner", "Team A", "d2"),
                                CanonArg("winner", "Team B", "d2"),
                                CanonArg("winner", "Team A", "d3")};
  std::vector<Argument> out = Dedup(args);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].canonical_entity, "Team A");
  EXPECT_EQ(out[0].provenance, (std::vector<std::string>{"d1", "d2", "d3"}));
  EXPECT_EQ(out[1].canonical_entity, "Team B");
  EXPECT_EQ(Dedup(out), out);  // idempotent
}

TEST(ResolveTest, DedupUsesCanonicalNotRawSurface) {
  Argument usa = CanonArg("attacker", "United States", "d1");
  usa.entity_surface = "USA";
  Argument us = CanonArg("attacker", "United States", "d2");
  std::vector<Argument> out = Dedup({usa, us});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].entity_surface, "USA");
}

TEST(ResolveTest, DedupNeedsNormalizedArguments) {
  try {
    Dedup({testing::Arg("winner", "x", "d")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("normalize before resolve"), std::string::npos);
  }
}

TEST(ResolveTest, TimeLocationModeByDocumentFrequency) {
  Argument win = ResolveTimeLocation({CanonArg("date", "1991-01-18", "d1"),
                                      CanonArg("date", "1991-01-17", "d2"),
                                      CanonArg("date", "1991-01-17", "d3")});
  EXPECT_EQ(win.canonical_entity, "1991-01-17");
  EXPECT_EQ(win.provenance, (std::vector<std::string>{"d2", "d3"}));
}

TEST(ResolveTest, RepetitionsInOneDocumentCountOnce) {
  Argument win = ResolveTimeLocation({CanonArg("location", "Basra", "d9"),
                                      CanonArg("location", "Basra", "d9"),
                                      CanonArg("location", "Basra", "d9"),
                                      CanonArg("location", "Baghdad", "d2"),
                                      CanonArg("location", "Baghdad", "d3")});
  EXPECT_EQ(win.canonical_entity, "Baghdad");
}

TEST(ResolveTest, SingleDocTieGoesToEarliestDocument) {
  Argument win = ResolveTimeLocation({CanonArg("date", "2001-01-01", "d7"),
                                      CanonArg("date", "2002-02-02", "d3")});
  EXPECT_EQ(win.canonical_entity, "2002-02-02");
  // Same earliest document: lexicographic value.
  Argument tie = ResolveTimeLocation({WithDocs(CanonArg("date", "b", "d1"), {"d1"}),
                                      WithDocs(CanonArg("date", "a", "d1"), {"d1"})});
  EXPECT_EQ(tie.canonical_entity, "a");
}

TEST(ResolveTest, TimeLocationErrors) {
  EXPECT_THROW(ResolveTimeLocation({}), Error);
  EXPECT_THROW(ResolveTimeLocation({CanonArg("date", "x", "d"), CanonArg("location", "y", "d")}),
               Error);
}

TEST(ResolveTest, HierarchyLevelsFromTheDefaultTable) {
  const RoleHierarchy& h = RoleHierarchy::Default();
  EXPECT_EQ(h.Level(EventType::kAttack, "Attacker"), 1);
  EXPECT_EQ(h.Level(EventType::kAttack, "eyewitness"), 2);
  EXPECT_EQ(h.Level(EventType::kSport, "coach"), 2);
  EXPECT_EQ(h.Level(EventType::kSport, "referee"), 2);
  EXPECT_EQ(h.Level(EventType::kElection, "campaign team member"), 2);
  EXPECT_EQ(h.Level(EventType::kGeneral, "audience member"), 4);
  EXPECT_EQ(h.Level(EventType::kAttack, "co-pilot"), kUnlistedRoleLevel);
  for (EventType t : kAllEventTypes) {
    std::set<int> levels;
    for (const auto& [type, role, level] : h.Rows()) {
      if (type == t) levels.insert(level);
    }
    EXPECT_EQ(levels, (std::set<int>{1, 2, 3, 4, 5})) << EventTypeName(t);
  }
}

TEST(ResolveTest, ShippedHierarchyFileMatchesBuiltIn) {
  RoleHierarchy file = LoadRoleHierarchy(testing::ShippedData("role_hierarchy.tsv"));
  EXPECT_EQ(file.Rows(), RoleHierarchy::Default().Rows());
  EXPECT_EQ(ParseRoleHierarchyText(SerializeRoleHierarchyText(file)).Rows(), file.Rows());
}

TEST(ResolveTest, HierarchyFileRejectsBadLevels) {
  EXPECT_THROW(ParseRoleHierarchyText("ATTACK\tattacker\t7\n"), Error);
  EXPECT_THROW(ParseRoleHierarchyText("WAR\tattacker\t1\n"), Error);
  EXPECT_THROW(ParseRoleHierarchyText("ATTACK\tattacker\n"), Error);
}

TEST(ResolveTest, RoleConflictByLevelThenCountThenName) {
  const RoleHierarchy& h = RoleHierarchy::Default();
  EXPECT_EQ(ResolveRoleConflict("x", {"attacker", "eyewitness"}, EventType::kAttack, h), "attacker");
  EXPECT_EQ(ResolveRoleConflict("x", {"eyewitness", "eyewitness", "attacker"}, EventType::kAttack, h),
            "attacker");
  EXPECT_EQ(ResolveRoleConflict("x", {"coach", "coach", "coach", "referee"}, EventType::kSport, h),
            "coach");
  EXPECT_EQ(ResolveRoleConflict("x", {"referee", "coach"}, EventType::kSport, h), "coach");
  EXPECT_EQ(ResolveRoleConflict("x", {"victim"}, EventType::kAttack, h), "victim");
  EXPECT_EQ(ResolveRoleConflict("x", {"zeta", "alpha", "zeta"}, EventType::kAttack, h), "zeta");
}

TEST(ResolveTest, MaxCountRoleByCountThenName) {
  EXPECT_EQ(MaxCountRole({"eyewitness", "eyewitness", "victim"}), "eyewitness");
  EXPECT_EQ(MaxCountRole({"b", "a"}), "a");
  EXPECT_THROW(MaxCountRole({}), Error);
}

MentionEvent M(std::string id, std::string doc, EventType type, std::vector<Argument> args) {
  for (Argument& a : args) a.source_doc = doc;
  return Mention(std::move(id), std::move(doc), type, "attack", std::move(args));
}

TEST(ResolveTest, FigureOneStyleMergeKeepsDateAndLocation) {
  std::vector<MentionEvent> ms = {
      M("m1", "d1", EventType::kAttack, {CanonArg("attacker", "Coalition Forces", "")}),
      M("m2", "d2", EventType::kAttack,
        {CanonArg("attacker", "Coalition Forces", ""), CanonArg("date", "1991-01-17", "")}),
      M("m3", "d3", EventType::kAttack,
        {CanonArg("attacker", "Coalition Forces", ""), CanonArg("location", "Baghdad", "")})};
  ConceptEvent e = MergeCluster({{"m1", "m2", "m3"}}, ms, MergeStrategy::kHierarchy,
                                RoleHierarchy::Default(), "gulf_war");
  EXPECT_EQ(e.collection_id, "gulf_war");
  EXPECT_EQ(e.event_type, EventType::kAttack);
  EXPECT_EQ(e.provenance, (std::vector<std::string>{"d1", "d2", "d3"}));
  EXPECT_EQ(e.mention_ids, (std::vector<std::string>{"m1", "m2", "m3"}));
  ASSERT_EQ(e.arguments.size(), 3u);
  EXPECT_EQ(e.arguments[0].canonical_entity, "Coalition Forces");
  EXPECT_EQ(e.arguments[0].provenance, (std::vector<std::string>{"d1", "d2", "d3"}));
  EXPECT_EQ(e.arguments[1].canonical_role, "date");
  EXPECT_EQ(e.arguments[2].canonical_role, "location");
  EXPECT_TRUE(ValidateConceptEvent(e).empty());
}

TEST(ResolveTest, SingleMentionClusterKeepsItsContent) {
  MentionEvent m = M("m1", "d1", EventType::kAward,
                     {CanonArg("awardee", "Ann", ""), CanonArg("presenter", "Bo", "")});
  ConceptEvent e = MergeCluster({{"m1"}}, {m}, MergeStrategy::kHierarchy, RoleHierarchy::Default(), "c");
  EXPECT_EQ(e.event_type, EventType::kAward);
  EXPECT_EQ(e.triggers, (std::vector<std::string>{"attack"}));
  ASSERT_EQ(e.arguments.size(), 2u);
  EXPECT_EQ(e.arguments[0].canonical_entity, "Ann");
  EXPECT_EQ(e.arguments[1].canonical_entity, "Bo");
}

ConceptEvent MergeRoles(std::vector<std::string> roles, MergeStrategy s) {
  std::vector<MentionEvent> ms;
  CorefCluster cl;
  for (size_t i = 0; i < roles.size(); ++i) {
    std::string id = "m" + std::to_string(i);
    ms.push_back(M(id, "d" + std::to_string(i), EventType::kAttack, {CanonArg(roles[i], "Smith", "")}));
    cl.mention_ids.push_back(id);
  }
  return MergeCluster(cl, ms, s, RoleHierarchy::Default(), "c");
}

TEST(ResolveTest, StrategiesAgreeWhenFrequentRoleRanksHighest) {
  for (MergeStrategy s : {MergeStrategy::kHierarchy, MergeStrategy::kMaxCount}) {
    ConceptEvent e = MergeRoles({"victim", "victim", "eyewitness"}, s);
    ASSERT_EQ(e.arguments.size(), 1u);
    EXPECT_EQ(e.arguments[0].canonical_role, "victim");
  }
}

TEST(ResolveTest, StrategiesDivergeWhenFrequencyFavorsLowerLevel) {
  EXPECT_EQ(MergeRoles({"eyewitness", "eyewitness", "victim"}, MergeStrategy::kHierarchy)
                .arguments[0].canonical_role,
            "victim");
  EXPECT_EQ(MergeRoles({"eyewitness", "eyewitness", "victim"}, MergeStrategy::kMaxCount)
                .arguments[0].canonical_role,
            "eyewitness");
}

TEST(ResolveTest, MajorityTypeWithEnumTieBreak) {
  std::vector<MentionEvent> ms = {M("a", "d1", EventType::kSport, {}),
                                  M("b", "d2", EventType::kAttack, {})};
  EXPECT_EQ(MergeCluster({{"a", "b"}}, ms, MergeStrategy::kHierarchy, RoleHierarchy::Default(), "c")
                .event_type,
            EventType::kAttack);
}

TEST(ResolveTest, MergeErrors) {
  EXPECT_THROW(MergeCluster({}, {}, MergeStrategy::kHierarchy, RoleHierarchy::Default(), "c"), Error);
  EXPECT_THROW(MergeCluster({{"ghost"}}, {}, MergeStrategy::kHierarchy, RoleHierarchy::Default(), "c"),
               Error);
}

TEST(ResolveTest, StrategyNames) {
  EXPECT_EQ(ParseMergeStrategy("hierarchy"), MergeStrategy::kHierarchy);
  EXPECT_EQ(ParseMergeStrategy("max-count"), MergeStrategy::kMaxCount);
  EXPECT_FALSE(ParseMergeStrategy("vote"));
  EXPECT_EQ(MergeStrategyName(MergeStrategy::kMaxCount), "max-count");
}

// Random clusters: output keeps one role per entity, provenance equals the
// union of mention documents, and the two strategies agree whenever the
// most frequent role of an entity is also its best-ranked one.
TEST(ResolveTest, RandomMergesSatisfyInvariantsAndMetamorphicAgreement) {
  std::mt19937 rng(31337);
  const std::vector<std::string> roles = {"attacker", "victim", "eyewitness", "reporter",
                                          "bystander", "unlisted"};
  const std::vector<std::string> entities = {"e1", "e2", "e3"};
  std::uniform_int_distribution<size_t> role_pick(0, roles.size() - 1);
  std::uniform_int_distribution<size_t> entity_pick(0, entities.size() - 1);
  std::uniform_int_distribution<size_t> small(1, 5);
  const RoleHierarchy& h = RoleHierarchy::Default();
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<MentionEvent> ms;
    CorefCluster cl;
    std::set<std::string> docs;
    size_t n = small(rng);
    for (size_t i = 0; i < n; ++i) {
      std::vector<Argument> args;
      std::set<std::string> used;
      for (size_t k = small(rng); k > 0; --k) {
        std::string e = entities[entity_pick(rng)];
        if (!used.insert(e).second) continue;
        args.push_back(CanonArg(roles[role_pick(rng)], e, ""));
      }
      std::string doc = "d" + std::to_string(i % 3);
      docs.insert(doc);
      ms.push_back(M("m" + std::to_string(i), doc, EventType::kAttack, args));
      cl.mention_ids.push_back(ms.back().id);
    }
    ConceptEvent hier = MergeCluster(cl, ms, MergeStrategy::kHierarchy, h, "c");
    ConceptEvent count = MergeCluster(cl, ms, MergeStrategy::kMaxCount, h, "c");
    ASSERT_TRUE(ValidateConceptEvent(hier).empty());
    ASSERT_TRUE(ValidateConceptEvent(count).empty());
    ASSERT_EQ(hier.provenance, std::vector<std::string>(docs.begin(), docs.end()));

    for (const std::string& e : entities) {
      std::vector<std::string> assigned;
      for (const MentionEvent& m : ms) {
        for (const Argument& a : m.arguments) {
          if (a.canonical_entity == e) assigned.push_back(*a.canonical_role);
        }
      }
      if (assigned.empty()) continue;
      std::string frequent = MaxCountRole(assigned);
      int best_level = kUnlistedRoleLevel + 1;
      for (const std::string& r : assigned) best_level = std::min(best_level, h.Level(EventType::kAttack, r));
      if (h.Level(EventType::kAttack, frequent) != best_level) continue;
      auto role_in = [&](const ConceptEvent& ev) {
        for (const Argument& a : ev.arguments) {
          if (a.canonical_entity == e) return *a.canonical_role;
        }
        return std::string();
      };
      ASSERT_EQ(role_in(hier), role_in(count)) << "trial " << trial << " entity " << e;
    }
  }
}

}  // namespace
}  // namespace cdee

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

#ifndef CDEE_RESOLVE_H_
#define CDEE_RESOLVE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "cdee/types.h"

namespace cdee {

// HIERARCHY resolves an entity's competing roles by role level; MAX_COUNT is
// the rule-based baseline that keeps the most frequent role.
enum class MergeStrategy { kHierarchy, kMaxCount };

std::optional<MergeStrategy> ParseMergeStrategy(std::string_view name);
std::string_view MergeStrategyName(MergeStrategy strategy);

// Roles not listed for an event type rank below every listed level.
inline constexpr int kUnlistedRoleLevel = 6;

// Per event type role priorities, level 1 (highest) to 5 (lowest). Role
// names are matched after FoldKey.
class RoleHierarchy {
 public:
  // The shipped five-level table covering all nine event types.
  static const RoleHierarchy& Default();

  // Throws Error on a level outside 1..5 or an empty role.
  void Set(EventType type, std::string_view role, int level);

  int Level(EventType type, std::string_view role) const;

  // (type, folded role, level) sorted by type, level, role.
  std::vector<std::tuple<EventType, std::string, int>> Rows() const;
  size_t size() const { return levels_.size(); }

  bool operator==(const RoleHierarchy&) const = default;

 private:
  std::map<std::pair<EventType, std::string>, int> levels_;
};

// Tab-separated "EVENT_TYPE<TAB>role<TAB>level"; '#' comments.
RoleHierarchy ParseRoleHierarchyText(std::string_view text,
                                     std::string_view source = "<hierarchy>");
RoleHierarchy LoadRoleHierarchy(const std::filesystem::path& path);
std::string SerializeRoleHierarchyText(const RoleHierarchy& hierarchy);

// One argument per (canonical_role, canonical_entity), in first-occurrence
// order, with provenance set to the union of the duplicates' documents.
// Throws Error("normalize before resolve") on missing canonical fields.
std::vector<Argument> Dedup(const std::vector<Argument>& arguments);

// Documents supporting an argument: its source_doc plus its provenance.
std::vector<std::string> SupportingDocs(const Argument& argument);

// Picks the value backed by the most distinct documents. Ties go to the
// value seen in the lexicographically earliest document, then to the
// smaller value. The winner's provenance covers every document that backs
// it. Throws Error on an empty list or mixed canonical roles.
Argument ResolveTimeLocation(const std::vector<Argument>& candidates);

// `roles` lists one entry per occurrence. The lowest level wins; within a
// level the most frequent role, then the lexicographically smaller one.
std::string ResolveRoleConflict(std::string_view entity,
                                const std::vector<std::string>& roles,
                                EventType type, const RoleHierarchy& hierarchy);

// Baseline: most frequent role, ties to the lexicographically smaller one.
std::string MaxCountRole(const std::vector<std::string>& roles);

// Merges the cluster's (already normalized) mentions into one concept event:
// majority event type (ties to enum order), dedup, one role per entity by
// `strategy`, then the mode for date and location. Role counts are the
// number of mentions that assign the role to the entity. Throws Error on an
// empty cluster or an id missing from `mentions`.
ConceptEvent MergeCluster(const CorefCluster& cluster,
                          const std::vector<MentionEvent>& mentions,
                          MergeStrategy strategy, const RoleHierarchy& hierarchy,
                          std::string collection_id = {});

}  // namespace cdee

#endif  // CDEE_RESOLVE_H_

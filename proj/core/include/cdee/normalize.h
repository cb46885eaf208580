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

#ifndef CDEE_NORMALIZE_H_
#define CDEE_NORMALIZE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdee/types.h"

namespace cdee {

// Canonical role names that get value standardization before resolution.
inline constexpr std::string_view kDateRole = "date";
inline constexpr std::string_view kLocationRole = "location";

struct AliasEntry {
  std::string surface_key;  // FoldKey of the surface
  std::string canonical;
  std::vector<std::string> keywords;  // folded context keywords
};

// Surface -> canonical entity table. A surface may list several candidates
// only if every candidate carries context keywords.
class AliasTable {
 public:
  // Throws Error on an empty canonical id or an ambiguous surface whose
  // candidates cannot be told apart by keywords.
  void Add(std::string_view surface, std::string canonical,
           std::vector<std::string> keywords = {});

  // Candidates for a surface in table order; empty when unknown.
  std::vector<const AliasEntry*> Candidates(std::string_view surface) const;

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<AliasEntry> entries_;
  std::map<std::string, std::vector<size_t>, std::less<>> index_;
};

// Tab-separated "surface<TAB>canonical[<TAB>kw1,kw2,...]"; '#' comments.
AliasTable ParseAliasTableText(std::string_view text,
                               std::string_view source = "<aliases>");
AliasTable LoadAliasTable(const std::filesystem::path& path);

// Exact lookup on the folded surface. With several candidates, the one whose
// keywords occur most often (as distinct keywords) in the folded context
// wins, ties going to table order. Unknown surfaces map to their folded form.
std::string LinkEntity(std::string_view surface, std::string_view context,
                       const AliasTable& table);

std::string NormalizeLocation(std::string_view surface,
                              const AliasTable& gazetteer);

// Convention for all-numeric dates such as 01/02/2023.
enum class DateOrder { kMonthFirst, kDayFirst };

std::optional<DateOrder> ParseDateOrder(std::string_view flag);  // "mdy"/"dmy"

struct NormalizedDate {
  std::string value;
  bool recognized = false;

  bool operator==(const NormalizedDate&) const = default;
};

// Canonicalizes to ISO 8601 at the precision present in the input
// (YYYY-MM-DD, YYYY-MM or YYYY). Accepted shapes:
//   "January 1, 2023"  "1 January 2023"  "Jan. 2023"  "MM/DD/YYYY"
//   "YYYY-MM-DD"  "YYYY-MM"  "YYYY"  "2023年1月1日"  "2023年1月"  "2023年"
// Numeric slash dates follow `order`; if that reading is not a real date
// but the other one is, the other one is used. Anything else comes back
// unchanged with recognized = false.
NormalizedDate NormalizeDate(std::string_view raw,
                             DateOrder order = DateOrder::kMonthFirst);

// Role surface -> canonical role. Canonical roles are fixed points, and
// roles not in the table are added as their own canonical form.
class RoleMap {
 public:
  // Throws Error when the entry would break idempotence (the canonical is
  // itself mapped elsewhere, or the surface is already mapped differently).
  void Add(std::string_view surface, std::string_view canonical);

  std::optional<std::string> Lookup(std::string_view role) const;

  // Lookup, auto-adding unknown roles. Throws Error on an empty role.
  std::string Normalize(std::string_view role);

  bool Contains(std::string_view role) const;
  bool IsCanonical(std::string_view role) const;

  // Merges another map's auto-added roles (sorted order).
  void MergeAutoAdded(const std::set<std::string>& roles);

  const std::map<std::string, std::string, std::less<>>& entries() const {
    return map_;
  }
  const std::set<std::string>& auto_added() const { return auto_added_; }
  std::set<std::string> CanonicalRoles() const;

 private:
  std::map<std::string, std::string, std::less<>> map_;
  std::set<std::string> auto_added_;
};

// Tab-separated "surface<TAB>canonical"; '#' comments.
RoleMap ParseRoleMapText(std::string_view text,
                         std::string_view source = "<role map>");
RoleMap LoadRoleMap(const std::filesystem::path& path);

// Sidecar listing of auto-added roles, one "role<TAB>role" line each.
std::string SerializeAutoAddedRoles(const RoleMap& map);

// Returns the canonical role and records any auto-add in `map`.
std::string NormalizeRole(std::string_view role, RoleMap& map);

// Everything entity normalization needs for one run.
struct NormalizationTables {
  AliasTable aliases;
  AliasTable gazetteer;
  DateOrder date_order = DateOrder::kMonthFirst;
};

// Fills canonical_role and canonical_entity on every argument of `mention`.
// Dates and locations are keyed on the canonical role. `context` is the
// source document text used for alias disambiguation. Roles missing from
// `roles` are resolved to themselves and reported through `added_roles`,
// leaving `roles` untouched so that callers can run in parallel.
void NormalizeMention(MentionEvent& mention, std::string_view context,
                      const RoleMap& roles, const NormalizationTables& tables,
                      std::set<std::string>* added_roles);

}  // namespace cdee

#endif  // CDEE_NORMALIZE_H_

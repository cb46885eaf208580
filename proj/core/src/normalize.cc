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

#include "cdee/normalize.h"

#include "cdee/corpus.h"
#include "cdee/text.h"

namespace cdee {

void AliasTable::Add(std::string_view surface, std::string canonical,
                     std::vector<std::string> keywords) {
  std::string key = FoldKey(surface);
  if (key.empty()) throw Error("alias table: empty surface");
  if (Trim(canonical).empty()) {
    throw Error("alias table: empty canonical id for \"" + key + "\"");
  }
  std::vector<std::string> folded;
  for (const std::string& kw : keywords) {
    std::string k = FoldKey(kw);
    if (!k.empty()) folded.push_back(std::move(k));
  }
  std::vector<size_t>& slots = index_[key];
  if (!slots.empty()) {
    bool all_keyed = !folded.empty();
    for (size_t i : slots) all_keyed = all_keyed && !entries_[i].keywords.empty();
    if (!all_keyed) {
      throw Error("alias table: surface \"" + key +
                  "\" has several candidates, so each needs context keywords");
    }
  }
  slots.push_back(entries_.size());
  entries_.push_back(
      AliasEntry{std::move(key), std::string(Trim(canonical)), std::move(folded)});
}

std::vector<const AliasEntry*> AliasTable::Candidates(
    std::string_view surface) const {
  std::vector<const AliasEntry*> out;
  auto it = index_.find(FoldKey(surface));
  if (it == index_.end()) return out;
  for (size_t i : it->second) out.push_back(&entries_[i]);
  return out;
}

AliasTable ParseAliasTableText(std::string_view text, std::string_view source) {
  AliasTable table;
  size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw Error(where + "expected surface<TAB>canonical[<TAB>keywords]");
    }
    std::vector<std::string> keywords;
    if (cols.size() == 3) keywords = Split(cols[2], ',');
    try {
      table.Add(cols[0], cols[1], std::move(keywords));
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  return table;
}

AliasTable LoadAliasTable(const std::filesystem::path& path) {
  return ParseAliasTableText(ReadFile(path), path.string());
}

std::string LinkEntity(std::string_view surface, std::string_view context,
                       const AliasTable& table) {
  std::vector<const AliasEntry*> candidates = table.Candidates(surface);
  if (candidates.empty()) {
    std::string self = FoldKey(surface);
    return self.empty() ? std::string(surface) : self;
  }
  if (candidates.size() == 1) return candidates.front()->canonical;
  std::string folded_context = FoldKey(context);
  const AliasEntry* best = nullptr;
  size_t best_hits = 0;
  for (const AliasEntry* entry : candidates) {
    size_t hits = 0;
    for (const std::string& kw : entry->keywords) {
      if (folded_context.find(kw) != std::string::npos) ++hits;
    }
    if (best == nullptr || hits > best_hits) {
      best = entry;
      best_hits = hits;
    }
  }
  return best->canonical;
}

std::string NormalizeLocation(std::string_view surface,
                              const AliasTable& gazetteer) {
  return LinkEntity(surface, {}, gazetteer);
}

std::optional<DateOrder> ParseDateOrder(std::string_view flag) {
  if (flag == "mdy") return DateOrder::kMonthFirst;
  if (flag == "dmy") return DateOrder::kDayFirst;
  return std::nullopt;
}

void RoleMap::Add(std::string_view surface, std::string_view canonical) {
  std::string s = FoldKey(surface);
  std::string c = FoldKey(canonical);
  if (s.empty() || c.empty()) throw Error("role map: empty role");
  auto existing_c = map_.find(c);
  if (existing_c != map_.end() && existing_c->second != c) {
    throw Error("role map: canonical role \"" + c + "\" is itself mapped to \"" +
                existing_c->second + "\"");
  }
  auto existing_s = map_.find(s);
  if (existing_s != map_.end() && existing_s->second != c) {
    throw Error("role map: \"" + s + "\" is already mapped to \"" +
                existing_s->second + "\"");
  }
  if (s != c) {
    for (const auto& [from, to] : map_) {
      if (to == s) {
        throw Error("role map: \"" + s + "\" is the canonical form of \"" +
                    from + "\" and cannot be remapped");
      }
    }
  }
  map_[c] = c;
  map_[s] = c;
  auto_added_.erase(s);
}

std::optional<std::string> RoleMap::Lookup(std::string_view role) const {
  auto it = map_.find(FoldKey(role));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::string RoleMap::Normalize(std::string_view role) {
  std::string key = FoldKey(role);
  if (key.empty()) throw Error("role map: empty role");
  auto it = map_.find(key);
  if (it != map_.end()) return it->second;
  map_.emplace(key, key);
  auto_added_.insert(key);
  return key;
}

bool RoleMap::Contains(std::string_view role) const {
  return map_.find(FoldKey(role)) != map_.end();
}

bool RoleMap::IsCanonical(std::string_view role) const {
  std::string key = FoldKey(role);
  auto it = map_.find(key);
  return it != map_.end() && it->second == key;
}

void RoleMap::MergeAutoAdded(const std::set<std::string>& roles) {
  for (const std::string& role : roles) Normalize(role);
}

std::set<std::string> RoleMap::CanonicalRoles() const {
  std::set<std::string> out;
  for (const auto& [from, to] : map_) out.insert(to);
  return out;
}

RoleMap ParseRoleMapText(std::string_view text, std::string_view source) {
  RoleMap map;
  size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 2) throw Error(where + "expected surface<TAB>canonical");
    try {
      map.Add(cols[0], cols[1]);
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  return map;
}

RoleMap LoadRoleMap(const std::filesystem::path& path) {
  return ParseRoleMapText(ReadFile(path), path.string());
}

std::string SerializeAutoAddedRoles(const RoleMap& map) {
  std::string out;
  for (const std::string& role : map.auto_added()) out += role + "\t" + role + "\n";
  return out;
}

std::string NormalizeRole(std::string_view role, RoleMap& map) {
  return map.Normalize(role);
}

void NormalizeMention(MentionEvent& mention, std::string_view context,
                      const RoleMap& roles, const NormalizationTables& tables,
                      std::set<std::string>* added_roles) {
  for (Argument& a : mention.arguments) {
    std::string role;
    if (auto mapped = roles.Lookup(a.role)) {
      role = std::move(*mapped);
    } else {
      role = FoldKey(a.role);
      if (role.empty()) throw Error("argument of \"" + mention.id + "\" has an empty role");
      if (added_roles != nullptr) added_roles->insert(role);
    }
    std::string entity;
    if (role == kDateRole) {
      NormalizedDate date = NormalizeDate(a.entity_surface, tables.date_order);
      entity = date.recognized ? date.value : FoldKey(a.entity_surface);
    } else if (role == kLocationRole) {
      entity = NormalizeLocation(a.entity_surface, tables.gazetteer);
    } else {
      entity = LinkEntity(a.entity_surface, context, tables.aliases);
    }
    a.canonical_role = std::move(role);
    a.canonical_entity = std::move(entity);
  }
}

}  // namespace cdee

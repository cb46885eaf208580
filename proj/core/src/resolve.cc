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

#include <algorithm>
#include <array>
#include <set>

#include "cdee/corpus.h"
#include "cdee/normalize.h"
#include "cdee/text.h"

namespace cdee {
namespace {

void RequireCanonical(const Argument& a) {
  if (!a.canonical_role || !a.canonical_entity) {
    throw Error("normalize before resolve: argument \"" + a.entity_surface +
                "\" (" + a.role + ") lacks canonical fields");
  }
}

std::vector<std::string> Union(std::vector<std::string> a,
                               const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return SortedUnique(std::move(a));
}

std::map<std::string, size_t> CountRoles(const std::vector<std::string>& roles) {
  std::map<std::string, size_t> counts;
  for (const std::string& r : roles) ++counts[r];
  return counts;
}

}  // namespace

std::optional<MergeStrategy> ParseMergeStrategy(std::string_view name) {
  if (name == "hierarchy") return MergeStrategy::kHierarchy;
  if (name == "max-count") return MergeStrategy::kMaxCount;
  return std::nullopt;
}

std::string_view MergeStrategyName(MergeStrategy strategy) {
  return strategy == MergeStrategy::kHierarchy ? "hierarchy" : "max-count";
}

void RoleHierarchy::Set(EventType type, std::string_view role, int level) {
  std::string key = FoldKey(role);
  if (key.empty()) throw Error("role hierarchy: empty role");
  if (level < 1 || level > 5) {
    throw Error("role hierarchy: level " + std::to_string(level) + " for \"" +
                key + "\" is outside 1..5");
  }
  levels_[{type, key}] = level;
}

int RoleHierarchy::Level(EventType type, std::string_view role) const {
  auto it = levels_.find({type, FoldKey(role)});
  return it == levels_.end() ? kUnlistedRoleLevel : it->second;
}

std::vector<std::tuple<EventType, std::string, int>> RoleHierarchy::Rows() const {
  std::vector<std::tuple<EventType, std::string, int>> rows;
  for (const auto& [key, level] : levels_) rows.emplace_back(key.first, key.second, level);
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<2>(x), std::get<1>(x)) <
           std::tie(std::get<0>(y), std::get<2>(y), std::get<1>(y));
  });
  return rows;
}

RoleHierarchy ParseRoleHierarchyText(std::string_view text,
                                     std::string_view source) {
  RoleHierarchy h;
  size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 3) throw Error(where + "expected EVENT_TYPE<TAB>role<TAB>level");
    try {
      std::string level_text(Trim(cols[2]));
      if (level_text.size() != 1 || level_text[0] < '0' || level_text[0] > '9') {
        throw Error("bad level \"" + level_text + "\"");
      }
      h.Set(ParseEventType(Trim(cols[0])), cols[1], level_text[0] - '0');
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  return h;
}

RoleHierarchy LoadRoleHierarchy(const std::filesystem::path& path) {
  return ParseRoleHierarchyText(ReadFile(path), path.string());
}

std::string SerializeRoleHierarchyText(const RoleHierarchy& hierarchy) {
  std::string out;
  for (const auto& [type, role, level] : hierarchy.Rows()) {
    out += std::string(EventTypeName(type)) + "\t" + role + "\t" +
           std::to_string(level) + "\n";
  }
  return out;
}

std::vector<std::string> SupportingDocs(const Argument& argument) {
  std::vector<std::string> docs = argument.provenance;
  if (!argument.source_doc.empty()) docs.push_back(argument.source_doc);
  return SortedUnique(std::move(docs));
}

std::vector<Argument> Dedup(const std::vector<Argument>& arguments) {
  std::vector<Argument> out;
  std::map<std::pair<std::string, std::string>, size_t> index;
  for (const Argument& a : arguments) {
    RequireCanonical(a);
    auto key = std::make_pair(*a.canonical_role, *a.canonical_entity);
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.size());
      Argument survivor = a;
      survivor.provenance = SupportingDocs(a);
      out.push_back(std::move(survivor));
    } else {
      Argument& survivor = out[it->second];
      survivor.provenance = Union(survivor.provenance, SupportingDocs(a));
    }
  }
  return out;
}

Argument ResolveTimeLocation(const std::vector<Argument>& candidates) {
  if (candidates.empty()) throw Error("no time/location candidates to resolve");
  struct Tally {
    size_t first_index;
    std::vector<std::string> docs;
  };
  std::map<std::string, Tally> by_value;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const Argument& a = candidates[i];
    RequireCanonical(a);
    if (*a.canonical_role != *candidates.front().canonical_role) {
      throw Error("time/location candidates mix roles \"" +
                  *candidates.front().canonical_role + "\" and \"" +
                  *a.canonical_role + "\"");
    }
    auto [it, inserted] = by_value.try_emplace(*a.canonical_entity, Tally{i, {}});
    it->second.docs = Union(it->second.docs, SupportingDocs(a));
  }
  const std::pair<const std::string, Tally>* best = nullptr;
  for (const auto& entry : by_value) {
    if (best == nullptr) {
      best = &entry;
      continue;
    }
    const auto& [value, tally] = entry;
    const Tally& b = best->second;
    // Values with no documents sort after every documented value.
    auto earliest = [](const Tally& t) {
      return t.docs.empty() ? std::string("\xFF") : t.docs.front();
    };
    bool better = false;
    if (tally.docs.size() != b.docs.size()) {
      better = tally.docs.size() > b.docs.size();
    } else if (earliest(tally) != earliest(b)) {
      better = earliest(tally) < earliest(b);
    } else {
      better = value < best->first;
    }
    if (better) best = &entry;
  }
  Argument chosen = candidates[best->second.first_index];
  chosen.provenance = best->second.docs;
  return chosen;
}

std::string ResolveRoleConflict(std::string_view /*entity*/,
                                const std::vector<std::string>& roles,
                                EventType type, const RoleHierarchy& hierarchy) {
  if (roles.empty()) throw Error("no roles to resolve");
  std::map<std::string, size_t> counts = CountRoles(roles);
  const std::string* best = nullptr;
  int best_level = 0;
  size_t best_count = 0;
  for (const auto& [role, count] : counts) {  // lexicographic order
    int level = hierarchy.Level(type, role);
    if (best == nullptr || level < best_level ||
        (level == best_level && count > best_count)) {
      best = &role;
      best_level = level;
      best_count = count;
    }
  }
  return *best;
}

std::string MaxCountRole(const std::vector<std::string>& roles) {
  if (roles.empty()) throw Error("no roles to resolve");
  std::map<std::string, size_t> counts = CountRoles(roles);
  const std::string* best = nullptr;
  size_t best_count = 0;
  for (const auto& [role, count] : counts) {
    if (best == nullptr || count > best_count) {
      best = &role;
      best_count = count;
    }
  }
  return *best;
}

ConceptEvent MergeCluster(const CorefCluster& cluster,
                          const std::vector<MentionEvent>& mentions,
                          MergeStrategy strategy, const RoleHierarchy& hierarchy,
                          std::string collection_id) {
  if (cluster.mention_ids.empty()) throw Error("cannot merge an empty cluster");
  std::set<std::string> wanted(cluster.mention_ids.begin(), cluster.mention_ids.end());
  std::vector<const MentionEvent*> members;
  for (const MentionEvent& m : mentions) {
    if (wanted.count(m.id) != 0) members.push_back(&m);
  }
  for (const std::string& id : wanted) {
    bool found = std::any_of(members.begin(), members.end(),
                             [&](const MentionEvent* m) { return m->id == id; });
    if (!found) throw Error("cluster references unknown mention \"" + id + "\"");
  }

  ConceptEvent event;
  event.collection_id = std::move(collection_id);

  std::array<size_t, kNumEventTypes> type_votes{};
  for (const MentionEvent* m : members) ++type_votes[static_cast<size_t>(m->event_type)];
  size_t winner = 0;
  for (size_t t = 1; t < kNumEventTypes; ++t) {
    if (type_votes[t] > type_votes[winner]) winner = t;
  }
  event.event_type = kAllEventTypes[winner];

  // How many mentions give each role to each entity.
  std::vector<Argument> all;
  std::map<std::string, std::map<std::string, std::set<std::string>>> role_support;
  for (const MentionEvent* m : members) {
    event.triggers.push_back(m->trigger_surface);
    event.provenance.push_back(m->doc_id);
    for (const Argument& a : m->arguments) {
      RequireCanonical(a);
      role_support[*a.canonical_entity][*a.canonical_role].insert(m->id);
      all.push_back(a);
    }
  }
  event.triggers = SortedUnique(std::move(event.triggers));
  event.provenance = SortedUnique(std::move(event.provenance));
  event.mention_ids = SortedUnique(cluster.mention_ids);

  std::vector<Argument> deduped = Dedup(all);

  // One role per entity, emitted where the entity first appeared.
  std::map<std::string, std::string> chosen_role;
  for (const auto& [entity, support] : role_support) {
    std::vector<std::string> roles;
    for (const auto& [role, ids] : support) roles.insert(roles.end(), ids.size(), role);
    chosen_role[entity] = strategy == MergeStrategy::kHierarchy
                              ? ResolveRoleConflict(entity, roles, event.event_type,
                                                    hierarchy)
                              : MaxCountRole(roles);
  }
  std::map<std::string, std::vector<std::string>> entity_docs;
  for (const Argument& a : deduped) {
    entity_docs[*a.canonical_entity] =
        Union(entity_docs[*a.canonical_entity], a.provenance);
  }
  std::vector<Argument> resolved;
  std::set<std::string> emitted;
  for (const Argument& a : deduped) {
    const std::string& entity = *a.canonical_entity;
    if (emitted.count(entity) != 0) continue;
    const std::string& role = chosen_role.at(entity);
    auto survivor = std::find_if(deduped.begin(), deduped.end(), [&](const Argument& x) {
      return *x.canonical_entity == entity && *x.canonical_role == role;
    });
    Argument kept = *survivor;
    kept.provenance = entity_docs.at(entity);
    resolved.push_back(std::move(kept));
    emitted.insert(entity);
  }

  // A single value per date/location role.
  for (std::string_view slot : {kDateRole, kLocationRole}) {
    std::vector<Argument> candidates;
    for (const Argument& a : resolved) {
      if (*a.canonical_role == slot) candidates.push_back(a);
    }
    if (candidates.size() < 2) continue;
    Argument winner_arg = ResolveTimeLocation(candidates);
    std::vector<Argument> kept;
    for (Argument& a : resolved) {
      if (*a.canonical_role != slot) {
        kept.push_back(std::move(a));
      } else if (*a.canonical_entity == *winner_arg.canonical_entity) {
        kept.push_back(winner_arg);
      }
    }
    resolved = std::move(kept);
  }
  event.arguments = std::move(resolved);
  return event;
}

}  // namespace cdee

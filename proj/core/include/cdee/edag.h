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

#ifndef CDEE_EDAG_H_
#define CDEE_EDAG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cdee/types.h"

namespace cdee {

// The fixed sequence of roles along which event records are laid out.
struct RoleOrder {
  EventType event_type = EventType::kOthers;
  std::vector<std::string> ordered_roles;

  // Throws Error when roles are empty or repeated.
  void Check() const;
};

// Role-order files: one line per event type, tab-separated,
// "EVENT_TYPE<TAB>role1<TAB>role2...". '#' starts a comment line.
std::map<EventType, RoleOrder> ParseRoleOrdersText(
    std::string_view text, std::string_view source = "<role orders>");
std::map<EventType, RoleOrder> LoadRoleOrders(const std::filesystem::path& path);

using EventRecord = std::map<std::string, std::string>;  // role -> entity

// One slot per ordered role; nullopt is the empty argument (NA).
using ArgumentChain = std::vector<std::optional<std::string>>;

struct EdagNode {
  std::optional<std::string> value;  // nullopt = NA; unused on the root
  int role_index = -1;               // -1 on the root
  std::vector<size_t> children;

  bool operator==(const EdagNode&) const = default;
};

// Prefix-shared graph of argument chains. nodes[root] is the entry point.
struct Edag {
  std::vector<EdagNode> nodes;
  size_t root = 0;

  size_t size() const { return nodes.size(); }
  bool operator==(const Edag&) const = default;
};

// Throws Error naming the first role of a record that is outside `order`.
std::vector<ArgumentChain> RecordsToChains(const std::vector<EventRecord>& records,
                                           const RoleOrder& order);

// Trie insertion: chains sharing a prefix of length k share the first k
// nodes, so duplicate chains collapse. NA slots are ordinary nodes and may
// branch. Throws Error on a chain of the wrong length.
Edag BuildEdag(const std::vector<ArgumentChain>& chains, const RoleOrder& order);

// Enumerates root-to-leaf paths in depth-first (insertion) order and turns
// each into a record, leaving NA roles out. Throws Error on a malformed
// graph (bad child index, wrong depth, duplicate sibling values).
std::vector<EventRecord> ExpandPaths(const Edag& edag, const RoleOrder& order);

}  // namespace cdee

#endif  // CDEE_EDAG_H_

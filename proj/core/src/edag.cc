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

#include "cdee/edag.h"

#include <set>
#include <utility>

#include "cdee/corpus.h"
#include "cdee/text.h"

namespace cdee {

void RoleOrder::Check() const {
  if (ordered_roles.empty()) {
    throw Error("role order for " + std::string(EventTypeName(event_type)) +
                " is empty");
  }
  std::set<std::string> seen;
  for (const std::string& role : ordered_roles) {
    if (role.empty() || !seen.insert(role).second) {
      throw Error("role order for " + std::string(EventTypeName(event_type)) +
                  " has an empty or repeated role \"" + role + "\"");
    }
  }
}

std::map<EventType, RoleOrder> ParseRoleOrdersText(std::string_view text,
                                                   std::string_view source) {
  std::map<EventType, RoleOrder> orders;
  size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    try {
      std::vector<std::string> cols = Split(line, '\t');
      RoleOrder order;
      order.event_type = ParseEventType(Trim(cols[0]));
      for (size_t i = 1; i < cols.size(); ++i) {
        order.ordered_roles.emplace_back(Trim(cols[i]));
      }
      order.Check();
      if (!orders.emplace(order.event_type, order).second) {
        throw Error("duplicate role order for " +
                    std::string(EventTypeName(order.event_type)));
      }
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  return orders;
}

std::map<EventType, RoleOrder> LoadRoleOrders(const std::filesystem::path& path) {
  return ParseRoleOrdersText(ReadFile(path), path.string());
}

std::vector<ArgumentChain> RecordsToChains(const std::vector<EventRecord>& records,
                                           const RoleOrder& order) {
  std::map<std::string, size_t> slot;
  for (size_t i = 0; i < order.ordered_roles.size(); ++i) {
    slot.emplace(order.ordered_roles[i], i);
  }
  std::vector<ArgumentChain> chains;
  chains.reserve(records.size());
  for (const EventRecord& record : records) {
    ArgumentChain chain(order.ordered_roles.size());
    for (const auto& [role, entity] : record) {
      auto it = slot.find(role);
      if (it == slot.end()) {
        throw Error("role \"" + role + "\" is not in the " +
                    std::string(EventTypeName(order.event_type)) +
                    " role order");
      }
      chain[it->second] = entity;
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

Edag BuildEdag(const std::vector<ArgumentChain>& chains, const RoleOrder& order) {
  const size_t depth = order.ordered_roles.size();
  Edag g;
  g.nodes.emplace_back();
  for (const ArgumentChain& chain : chains) {
    if (chain.size() != depth) {
      throw Error("argument chain has length " + std::to_string(chain.size()) +
                  ", expected " + std::to_string(depth));
    }
    size_t at = g.root;
    for (size_t i = 0; i < depth; ++i) {
      size_t next = g.nodes.size();
      for (size_t child : g.nodes[at].children) {
        if (g.nodes[child].value == chain[i]) {
          next = child;
          break;
        }
      }
      if (next == g.nodes.size()) {
        EdagNode node;
        node.value = chain[i];
        node.role_index = static_cast<int>(i);
        g.nodes.push_back(std::move(node));
        g.nodes[at].children.push_back(next);
      }
      at = next;
    }
  }
  return g;
}

std::vector<EventRecord> ExpandPaths(const Edag& edag, const RoleOrder& order) {
  const size_t depth = order.ordered_roles.size();
  if (edag.root >= edag.nodes.size()) throw Error("edag: root out of range");

  std::vector<EventRecord> out;
  std::vector<size_t> path;
  std::vector<char> visited(edag.nodes.size(), 0);

  // Recursion depth is bounded by the role count.
  auto visit = [&](auto&& self, size_t id) -> void {
    if (visited[id]) throw Error("edag: node " + std::to_string(id) + " reached twice");
    visited[id] = 1;
    const EdagNode& node = edag.nodes[id];
    if (id != edag.root &&
        node.role_index != static_cast<int>(path.size()) - 1) {
      throw Error("edag: node " + std::to_string(id) + " has role index " +
                  std::to_string(node.role_index) + " at depth " +
                  std::to_string(path.size()));
    }
    if (node.children.empty()) {
      if (id == edag.root) return;
      if (path.size() != depth) {
        throw Error("edag: leaf " + std::to_string(id) + " at depth " +
                    std::to_string(path.size()) + ", expected " +
                    std::to_string(depth));
      }
      EventRecord record;
      for (size_t i = 0; i < path.size(); ++i) {
        const auto& value = edag.nodes[path[i]].value;
        if (value) record.emplace(order.ordered_roles[i], *value);
      }
      out.push_back(std::move(record));
      return;
    }
    if (path.size() >= depth) {
      throw Error("edag: path below node " + std::to_string(id) +
                  " exceeds the role count");
    }
    std::set<std::optional<std::string>> sibling_values;
    for (size_t child : node.children) {
      if (child >= edag.nodes.size() || child == edag.root) {
        throw Error("edag: bad child index " + std::to_string(child));
      }
      if (!sibling_values.insert(edag.nodes[child].value).second) {
        throw Error("edag: node " + std::to_string(id) +
                    " has children with equal values");
      }
      path.push_back(child);
      self(self, child);
      path.pop_back();
    }
  };
  visit(visit, edag.root);
  return out;
}

}  // namespace cdee

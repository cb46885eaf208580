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

#include "cdee/types.h"

#include <algorithm>

namespace cdee {
namespace {

constexpr std::array<std::string_view, kNumEventTypes> kEventTypeNames = {
    "ATTACK",   "SPORT",    "EVENT_UNK", "ELECTION", "GENERAL",
    "DISASTER", "ACCIDENT", "AWARD",     "OTHERS",
};

}  // namespace

std::string_view EventTypeName(EventType type) {
  return kEventTypeNames[static_cast<size_t>(type)];
}

std::optional<EventType> TryParseEventType(std::string_view label) {
  for (size_t i = 0; i < kNumEventTypes; ++i) {
    if (kEventTypeNames[i] == label) return kAllEventTypes[i];
  }
  return std::nullopt;
}

EventType ParseEventType(std::string_view label) {
  if (auto type = TryParseEventType(label)) return *type;
  throw Error("unknown event type \"" + std::string(label) + "\"");
}

const Document* DocumentCollection::FindDocument(std::string_view doc_id) const {
  for (const Document& doc : documents) {
    if (doc.id == doc_id) return &doc;
  }
  return nullptr;
}

const MentionEvent* DocumentCollection::FindMention(
    std::string_view mention_id) const {
  for (const MentionEvent& m : mention_events) {
    if (m.id == mention_id) return &m;
  }
  return nullptr;
}

std::vector<std::string> SortedUnique(std::vector<std::string> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace cdee

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

#ifndef CDEE_TYPES_H_
#define CDEE_TYPES_H_

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdee {

// All recoverable failures (malformed input, violated preconditions) are
// reported with this exception. The message is meant for end users.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input that is readable but breaks the data model or a config contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The nine event categories. Declaration order is the row order of the
// published per-type document table and is used as a tie-break.
enum class EventType {
  kAttack,
  kSport,
  kEventUnk,
  kElection,
  kGeneral,
  kDisaster,
  kAccident,
  kAward,
  kOthers,
};

inline constexpr size_t kNumEventTypes = 9;

inline constexpr std::array<EventType, kNumEventTypes> kAllEventTypes = {
    EventType::kAttack,   EventType::kSport,    EventType::kEventUnk,
    EventType::kElection, EventType::kGeneral,  EventType::kDisaster,
    EventType::kAccident, EventType::kAward,    EventType::kOthers,
};

std::string_view EventTypeName(EventType type);

// Throws Error("unknown event type ...") for anything but the nine labels.
EventType ParseEventType(std::string_view label);

std::optional<EventType> TryParseEventType(std::string_view label);

// Half-open range of code point offsets into a document's text.
struct Span {
  size_t start = 0;
  size_t end = 0;

  size_t length() const { return end - start; }
  bool Contains(size_t offset) const { return offset >= start && offset < end; }

  auto operator<=>(const Span&) const = default;
};

struct Anchor {
  std::string target_event_id;
  Span span;

  bool operator==(const Anchor&) const = default;
};

struct Document {
  std::string id;
  std::string collection_id;
  std::string text;
  std::vector<Span> sentence_bounds;
  std::vector<Anchor> anchors;

  bool operator==(const Document&) const = default;
};

struct Argument {
  std::string role;
  std::optional<std::string> canonical_role;
  std::string entity_surface;
  std::optional<std::string> canonical_entity;
  std::optional<Span> span;
  std::string source_doc;
  // Documents that contributed this argument once merged. Empty on
  // mention-level arguments, where source_doc is the only provenance.
  std::vector<std::string> provenance;

  bool operator==(const Argument&) const = default;
};

struct MentionEvent {
  std::string id;
  std::string doc_id;
  EventType event_type = EventType::kOthers;
  std::string trigger_surface;
  std::optional<Span> trigger_span;
  std::vector<Argument> arguments;

  bool operator==(const MentionEvent&) const = default;
};

// Mention ids kept sorted and unique.
struct CorefCluster {
  std::vector<std::string> mention_ids;

  bool operator==(const CorefCluster&) const = default;
};

struct ConceptEvent {
  std::string collection_id;
  EventType event_type = EventType::kOthers;
  std::vector<std::string> triggers;    // sorted, unique
  std::vector<Argument> arguments;      // canonical fields filled
  std::vector<std::string> provenance;  // sorted, unique doc ids
  std::vector<std::string> mention_ids; // sorted; empty when unknown

  bool operator==(const ConceptEvent&) const = default;
};

inline constexpr size_t kMaxCollectionSize = 10;

struct DocumentCollection {
  std::string id;
  std::vector<Document> documents;
  std::vector<MentionEvent> mention_events;
  std::vector<CorefCluster> clusters;
  std::vector<ConceptEvent> gold_concept_events;

  const Document* FindDocument(std::string_view doc_id) const;
  const MentionEvent* FindMention(std::string_view mention_id) const;

  bool operator==(const DocumentCollection&) const = default;
};

// Sorted, deduplicated copy.
std::vector<std::string> SortedUnique(std::vector<std::string> values);

}  // namespace cdee

#endif  // CDEE_TYPES_H_

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

#ifndef CDEE_COLLECTIONS_H_
#define CDEE_COLLECTIONS_H_

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdee/types.h"

namespace cdee {

// Document id -> ids of the events its hyperlink anchors point at.
class AnchorGraph {
 public:
  // Throws Error on an empty target id.
  void Add(const Document& doc);
  const std::map<std::string, std::set<std::string>>& targets() const {
    return targets_;
  }
  // Target event id -> member document ids, both sorted.
  std::map<std::string, std::vector<std::string>> Members() const;

 private:
  std::map<std::string, std::set<std::string>> targets_;
};

// One collection per distinct anchor target, ordered by target id. Each
// member is a copy whose collection_id is the target; a document anchoring
// two targets lands in both. Documents without anchors join nothing. When a
// document id repeats, the first occurrence wins.
std::vector<DocumentCollection> BuildCollections(const std::vector<Document>& docs);

// Same, also copying each member document's mention events (taken from
// `mentions`, matched by doc_id) into its collections.
std::vector<DocumentCollection> BuildCollections(
    const std::vector<Document>& docs, const std::vector<MentionEvent>& mentions);

// Keeps the `limit` richest documents, ranked by mention-event count
// (descending), text length in code points (descending), then doc id.
// Survivors keep their original order. Mentions of dropped documents are
// removed, clusters lose those mentions (empty clusters vanish), and gold
// provenance is restricted to the survivors. Throws Error if limit < 1.
DocumentCollection CapCollection(const DocumentCollection& collection,
                                 size_t limit = kMaxCollectionSize);

struct FrequencyRow {
  std::string key;
  size_t count = 0;

  bool operator==(const FrequencyRow&) const = default;
};

struct LengthStats {
  size_t min = 0;
  size_t max = 0;
  double mean = 0.0;
  size_t total = 0;

  bool operator==(const LengthStats&) const = default;
};

struct CorpusStats {
  size_t collections = 0;
  // Document and mention totals are sums over collections, so a document
  // shared by two collections counts twice.
  size_t documents = 0;
  size_t mention_events = 0;
  size_t concept_events = 0;
  size_t cross_document_events = 0;  // gold events with provenance >= 2 docs
  double cross_document_share = 0.0;  // 0 when there are no concept events
  // Documents containing at least one mention of each type.
  std::array<size_t, kNumEventTypes> docs_per_type{};
  std::map<size_t, size_t> collection_sizes;  // size -> number of collections
  std::map<std::string, size_t> triggers;  // folded trigger -> mentions
  std::map<std::string, size_t> roles;  // canonical or folded role -> arguments
  LengthStats doc_words;
  LengthStats doc_sentences;

  bool operator==(const CorpusStats&) const = default;
};

CorpusStats ComputeStats(const std::vector<DocumentCollection>& corpus);

// Most frequent first (ties by key), or least frequent first (ties by key).
std::vector<FrequencyRow> TopK(const std::map<std::string, size_t>& counts, size_t k);
std::vector<FrequencyRow> BottomK(const std::map<std::string, size_t>& counts, size_t k);

std::string CorpusStatsJson(const CorpusStats& stats, size_t k = 10);
std::string CorpusStatsTable(const CorpusStats& stats, size_t k = 10);

}  // namespace cdee

#endif  // CDEE_COLLECTIONS_H_

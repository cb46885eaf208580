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

#ifndef CDEE_CORPUS_H_
#define CDEE_CORPUS_H_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cdee/types.h"

namespace cdee {

// Corpus files are UTF-8 JSON lines. A {"kind":"collection"} record opens a
// section; the document, mention_event, cluster and gold_concept_event
// records that follow belong to it until the next collection record. Ids of
// documents and mentions are unique within their collection, since the
// collection builder may place one document in several collections.
//
// Parsing validates every collection and throws Error on the first problem,
// naming the line for malformed records and the type/rule for violations.
std::vector<DocumentCollection> ParseCorpus(const std::filesystem::path& path);
std::vector<DocumentCollection> ParseCorpusText(
    std::string_view text, std::string_view source_name = "<input>");

// Field order is fixed, so equal corpora serialize to equal bytes.
std::string SerializeCorpusText(const std::vector<DocumentCollection>& corpus);
void SerializeCorpus(const std::vector<DocumentCollection>& corpus,
                     const std::filesystem::path& path);

struct ValidateOptions {
  // When set, every canonical_role present must satisfy this predicate.
  std::function<bool(std::string_view)> is_known_role;
};

// Returns one description per violated invariant, formatted as
// "Type[id].field: rule". An empty result means the collection is valid.
std::vector<std::string> Validate(const DocumentCollection& collection,
                                  const ValidateOptions& options = {});

// Concept-event invariants only. `owner` enables the provenance check.
std::vector<std::string> ValidateConceptEvent(
    const ConceptEvent& event, const DocumentCollection* owner = nullptr);

// Mention-event records in isolation (the extraction file format). Other
// record kinds are rejected.
std::vector<MentionEvent> ParseMentionRecords(const std::filesystem::path& path);
std::string SerializeMentionRecords(const std::vector<MentionEvent>& mentions);

// Concept-event files hold {"kind":"concept_event"} lines. The reader also
// accepts gold_concept_event records and skips every other kind, so a gold
// corpus can be scored directly.
std::string SerializeConceptEventsText(const std::vector<ConceptEvent>& events);
void WriteConceptEvents(const std::vector<ConceptEvent>& events,
                        const std::filesystem::path& path);
std::vector<ConceptEvent> ReadConceptEvents(const std::filesystem::path& path);
std::vector<ConceptEvent> ReadConceptEventsText(
    std::string_view text, std::string_view source_name = "<input>");

// Whole-file helpers shared by the readers and the pipeline.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace cdee

#endif  // CDEE_CORPUS_H_

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

#ifndef CDEE_INGEST_H_
#define CDEE_INGEST_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cdee/types.h"

namespace cdee {

// Deterministic stand-in for a trained document-level extractor.
//
// Lexicon files are tab-separated with two sections:
//
//   [triggers]
//   defeat<TAB>ATTACK
//   [role_cues]
//   on<TAB>date
//
// Blank lines and lines starting with '#' are ignored.
struct ExtractionLexicon {
  std::map<std::string, EventType> triggers;  // surface -> type
  std::map<std::string, std::string> role_cues;  // cue -> role

  // Throws Error on an empty trigger or a trigger mapped to two types.
  void AddTrigger(const std::string& surface, EventType type);
  void AddRoleCue(const std::string& cue, const std::string& role);

  bool operator==(const ExtractionLexicon&) const = default;
};

ExtractionLexicon LoadLexicon(const std::filesystem::path& path);
ExtractionLexicon ParseLexiconText(std::string_view text,
                                   std::string_view source = "<lexicon>");

using ExtractionMap = std::map<std::string, std::vector<MentionEvent>>;

// Reads a file of mention_event records and groups them by doc_id. Every
// doc_id must name one of `documents`; mention ids must be unique.
ExtractionMap LoadExtractions(const std::filesystem::path& path,
                              const std::vector<Document>& documents);

// Grouping and checks of LoadExtractions over already-parsed mentions.
ExtractionMap GroupExtractions(std::vector<MentionEvent> mentions,
                               const std::vector<Document>& documents);

// Replaces each collection's mention events with the extractions of its
// documents, in document order.
void AttachExtractions(const ExtractionMap& extractions,
                       std::vector<DocumentCollection>& corpus);

// Scans doc.text left to right for trigger surfaces (exact, case-sensitive,
// longest match at each position, non-overlapping) and emits one mention per
// hit. Role cues found on word boundaries in the trigger's sentence attach
// an argument whose entity is the text following the cue, up to the next
// comma, semicolon, cue, trigger or sentence end. Mention ids are
// "<doc_id>:m<k>".
std::vector<MentionEvent> LexiconExtract(const Document& doc,
                                         const ExtractionLexicon& lexicon);

}  // namespace cdee

#endif  // CDEE_INGEST_H_

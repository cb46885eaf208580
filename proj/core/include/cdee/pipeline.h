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

#ifndef CDEE_PIPELINE_H_
#define CDEE_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdee/coref.h"
#include "cdee/edag.h"
#include "cdee/normalize.h"
#include "cdee/resolve.h"
#include "cdee/types.h"

namespace cdee {

// Pipeline settings. Optional table paths fall back to built-in behaviour:
// no aliases (entities are only case-folded), an empty role map (every role
// is auto-added), and the built-in role hierarchy.
struct PipelineConfig {
  std::filesystem::path corpus;
  std::filesystem::path extractions;  // mention_event records from a tagger
  std::filesystem::path lexicon;  // used for documents without extractions
  std::filesystem::path aliases;
  std::filesystem::path gazetteer;
  std::filesystem::path role_map;
  std::filesystem::path hierarchy;
  std::filesystem::path role_orders;
  std::filesystem::path coref_scores;  // external pair probabilities
  double coref_threshold = kDefaultCorefThreshold;
  MergeStrategy strategy = MergeStrategy::kHierarchy;
  DateOrder date_order = DateOrder::kMonthFirst;
  std::filesystem::path output_dir = "cdee-out";
  size_t workers = 1;
  bool relaxed_eval = false;
  ScorerWeights weights;

  // Throws ValidationError when the threshold is outside [0, 1], workers is
  // 0, the corpus is unset, or a configured path does not exist.
  void Check() const;
};

// "key = value" lines; '#' starts a comment. Relative paths are resolved
// against `base_dir`. Unknown keys and malformed values throw
// ValidationError naming the line.
PipelineConfig ParsePipelineConfigText(std::string_view text,
                                       const std::filesystem::path& base_dir,
                                       std::string_view source = "<config>");
PipelineConfig LoadPipelineConfig(const std::filesystem::path& path);

// File names of the stage artifacts inside the output directory.
inline constexpr std::string_view kCorefFile = "coref.jsonl";
inline constexpr std::string_view kNormalizedFile = "normalized.jsonl";
inline constexpr std::string_view kAddedRolesFile = "role_map.added.tsv";
inline constexpr std::string_view kConceptEventsFile = "concept_events.jsonl";
inline constexpr std::string_view kEvalJsonFile = "eval.json";
inline constexpr std::string_view kEvalTableFile = "eval.txt";

// Runs fn(0) .. fn(n - 1) on up to `workers` threads. Every index runs even
// if another fails; the exception of the lowest failing index is rethrown.
void ParallelFor(size_t n, size_t workers, const std::function<void(size_t)>& fn);

// Reads the corpus and fills in mention events. Records from `extractions`
// replace every embedded mention; afterwards the lexicon, if configured,
// tags documents that still have none. Collections are sorted by id.
std::vector<DocumentCollection> IngestCorpus(const PipelineConfig& config);

// In-memory stages; each processes collections independently on the worker
// pool and preserves collection order.
void CorefStage(std::vector<DocumentCollection>& corpus, const PipelineConfig& config);
// Returns the role map including roles auto-added while normalizing.
RoleMap NormalizeStage(std::vector<DocumentCollection>& corpus,
                       const PipelineConfig& config);
std::vector<ConceptEvent> ResolveStage(const std::vector<DocumentCollection>& corpus,
                                       const PipelineConfig& config);

// File-to-file stage commands. Each reads the previous stage's artifact
// from the output directory, or raises an Error naming the stage that
// produces it. Every error is prefixed with the stage name.
void RunCorefCommand(const PipelineConfig& config);
void RunNormalizeCommand(const PipelineConfig& config);
void RunResolveCommand(const PipelineConfig& config);
// Returns false, writing nothing, when the corpus has no gold events.
bool RunEvalCommand(const PipelineConfig& config);

// All stages in order. Returns whether an evaluation report was written.
bool RunPipeline(const PipelineConfig& config);

// Concept events grouped by type and encoded as argument-chain graphs.
// Roles missing from a type's order are skipped and counted; when a role
// has several entities the lexicographically smallest one is used.
struct EdagSummary {
  EventType type = EventType::kOthers;
  size_t records = 0;
  size_t nodes = 0;
  size_t skipped_roles = 0;
  std::vector<EventRecord> paths;
};
std::vector<EdagSummary> SummarizeEdags(const std::vector<ConceptEvent>& events,
                                        const std::map<EventType, RoleOrder>& orders);
std::string EdagSummaryJson(const std::vector<EdagSummary>& summaries);

}  // namespace cdee

#endif  // CDEE_PIPELINE_H_

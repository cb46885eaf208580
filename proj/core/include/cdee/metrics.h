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

#ifndef CDEE_METRICS_H_
#define CDEE_METRICS_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdee/types.h"

namespace cdee {

// A clustering of mention ids: disjoint, non-empty sets.
using Partition = std::vector<std::vector<std::string>>;

struct PrfScore {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;

  bool operator==(const PrfScore&) const = default;
};

// f1 = 2PR / (P + R), or 0 when P + R = 0.
PrfScore MakePrf(double recall, double precision);

// Throws Error if a cluster is empty or a mention occurs twice.
void CheckPartition(const Partition& partition);

// Mentions present on one side only are added to the other side as
// singletons before scoring, for every coreference metric below.
std::pair<Partition, Partition> AddTwinlessSingletons(const Partition& key,
                                                      const Partition& response);

// Link-based score. 0/0 is scored 0.
PrfScore Muc(const Partition& key, const Partition& response);

// Mention-averaged overlap, computed exactly and rounded once. An empty
// mention set scores 0.
PrfScore BCubed(const Partition& key, const Partition& response);

// Entity-based CEAF with phi4(K, R) = 2|K n R| / (|K| + |R|) under the best
// one-to-one cluster alignment. The aligned similarity is summed exactly as
// a rational, so equal alignments give bit-identical scores.
PrfScore Ceaf(const Partition& key, const Partition& response);

// Arithmetic mean of the three F1 values, correctly rounded; symmetric in
// its arguments.
double Conll(const PrfScore& muc, const PrfScore& b3, const PrfScore& ceaf);

struct CorefScores {
  PrfScore muc;
  PrfScore b3;
  PrfScore ceaf;
  double conll_f1 = 0.0;
};

CorefScores ScoreCoreference(const Partition& key, const Partition& response);

using TypedItem = std::pair<std::string, EventType>;

// Micro P/R/F1 over exact (id, type) matches.
PrfScore PrfType(const std::vector<TypedItem>& gold,
                 const std::vector<TypedItem>& pred);

// Compares (role, entity) pairs of events matched by (collection id, event
// type), using canonical fields when present. Strict mode needs exact
// equality; relaxed mode accepts a predicted entity contained in a gold
// entity of the same role. Arguments with an empty entity are ignored.
PrfScore PrfRoles(const std::vector<ConceptEvent>& gold,
                  const std::vector<ConceptEvent>& pred, bool relaxed);

// Fleiss' kappa over an items x categories matrix of rating counts. Each row
// must sum to `raters` (>= 2). When every rating falls in one category the
// agreement is perfect and 1 is returned.
double FleissKappa(const std::vector<std::vector<int>>& ratings, int raters);

struct EvalReport {
  PrfScore type_classification;
  PrfScore role_extraction;
  bool relaxed = false;
  // Present when the gold events carry mention ids.
  std::optional<CorefScores> coreference;
};

// End-to-end scoring of predicted against gold concept events. Coreference
// partitions come from the events' mention ids, qualified by collection id.
EvalReport Evaluate(const std::vector<ConceptEvent>& gold,
                    const std::vector<ConceptEvent>& pred, bool relaxed);

std::string EvalReportJson(const EvalReport& report);
std::string EvalReportTable(const EvalReport& report);

// Cluster files: one cluster per line, mention ids separated by whitespace.
Partition ParseClusterText(std::string_view text);

}  // namespace cdee

#endif  // CDEE_METRICS_H_

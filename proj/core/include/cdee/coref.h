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

#ifndef CDEE_COREF_H_
#define CDEE_COREF_H_

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cdee/types.h"

namespace cdee {

inline constexpr double kDefaultCorefThreshold = 0.5;

// Coreference probability of an unordered mention pair, stored with a < b.
struct PairScore {
  std::string a;
  std::string b;
  double p = 0.0;

  bool operator==(const PairScore&) const = default;
};

// Builds a canonical (a < b) score. Throws Error if a == b or p is outside
// [0, 1] or not finite.
PairScore MakePairScore(std::string a, std::string b, double p);

// Weights of the logistic pair scorer.
struct ScorerWeights {
  double w_trigger = 2.0;
  double w_type = 1.0;
  double w_arg_overlap = 2.0;
  double bias = -2.5;

  void Check() const;  // all finite
};

// p = logistic(w_trigger*[same folded trigger] + w_type*[same type]
//              + w_arg_overlap*Jaccard(folded entity surfaces) + bias).
// Jaccard of two empty sets is 0. Symmetric in (a, b).
PairScore ScorePair(const MentionEvent& a, const MentionEvent& b,
                    const ScorerWeights& weights = {});

// Scores every unordered pair, in (i, j > i) input order.
std::vector<PairScore> ScoreAllPairs(const std::vector<MentionEvent>& mentions,
                                     const ScorerWeights& weights = {});

// Symmetric lookup; pairs that were never scored read as 0.
class PairScoreTable {
 public:
  PairScoreTable() = default;
  explicit PairScoreTable(const std::vector<PairScore>& scores);

  // Throws Error("conflicting pair ...") when the pair is already present
  // with a different probability; an identical repeat is a no-op.
  void Add(const PairScore& score);
  double Get(const std::string& a, const std::string& b) const;
  std::vector<PairScore> ToVector() const;  // sorted by (a, b)
  size_t size() const { return scores_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, double> scores_;
};

// Pair-score files: one "a_id b_id p" triple per line, whitespace separated.
// Blank lines and '#' comments are skipped. The result is deduplicated and
// sorted.
std::vector<PairScore> ParseScoresText(std::string_view text,
                                       std::string_view source = "<scores>");
std::vector<PairScore> LoadScores(const std::filesystem::path& path);
std::string SerializeScoresText(const std::vector<PairScore>& scores);

// Average-linkage agglomerative clustering. Starts from singletons and keeps
// merging the pair of clusters with the highest mean cross score until that
// mean is <= threshold. Equal means go to the pair whose (smallest member
// id, smallest member id) is lexicographically lowest. Output clusters are
// sorted internally and ordered by their first id.
std::vector<CorefCluster> Cluster(const std::vector<MentionEvent>& mentions,
                                  const PairScoreTable& scores,
                                  double threshold = kDefaultCorefThreshold);

// Keeps a mention iff some other mention across `clusters` scores strictly
// above threshold with it. Emptied clusters disappear.
std::vector<CorefCluster> Retain(const std::vector<CorefCluster>& clusters,
                                 const PairScoreTable& scores,
                                 double threshold = kDefaultCorefThreshold);

}  // namespace cdee

#endif  // CDEE_COREF_H_

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

#include "cdee/coref.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "cdee/corpus.h"
#include "cdee/text.h"

namespace cdee {
namespace {

double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::set<std::string> FoldedSurfaces(const MentionEvent& m) {
  std::set<std::string> out;
  for (const Argument& a : m.arguments) out.insert(FoldKey(a.entity_surface));
  return out;
}

double Jaccard(const std::set<std::string>& x, const std::set<std::string>& y) {
  if (x.empty() && y.empty()) return 0.0;
  size_t common = 0;
  for (const std::string& s : x) common += y.count(s);
  return static_cast<double>(common) /
         static_cast<double>(x.size() + y.size() - common);
}

void CheckThreshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error("coreference threshold must lie in [0, 1]");
  }
}

}  // namespace

PairScore MakePairScore(std::string a, std::string b, double p) {
  if (a == b) throw Error("pair score needs two distinct mentions (\"" + a + "\")");
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw Error("pair score for (" + a + ", " + b + ") is outside [0, 1]");
  }
  if (b < a) std::swap(a, b);
  return PairScore{std::move(a), std::move(b), p};
}

void ScorerWeights::Check() const {
  if (!std::isfinite(w_trigger) || !std::isfinite(w_type) ||
      !std::isfinite(w_arg_overlap) || !std::isfinite(bias)) {
    throw Error("scorer weights must be finite");
  }
}

PairScore ScorePair(const MentionEvent& a, const MentionEvent& b,
                    const ScorerWeights& w) {
  double trigger = FoldKey(a.trigger_surface) == FoldKey(b.trigger_surface);
  double type = a.event_type == b.event_type;
  double overlap = Jaccard(FoldedSurfaces(a), FoldedSurfaces(b));
  double z = w.w_trigger * trigger + w.w_type * type +
             w.w_arg_overlap * overlap + w.bias;
  return MakePairScore(a.id, b.id, Logistic(z));
}

std::vector<PairScore> ScoreAllPairs(const std::vector<MentionEvent>& mentions,
                                     const ScorerWeights& weights) {
  std::vector<PairScore> out;
  for (size_t i = 0; i < mentions.size(); ++i) {
    for (size_t j = i + 1; j < mentions.size(); ++j) {
      out.push_back(ScorePair(mentions[i], mentions[j], weights));
    }
  }
  return out;
}

PairScoreTable::PairScoreTable(const std::vector<PairScore>& scores) {
  for (const PairScore& s : scores) Add(s);
}

void PairScoreTable::Add(const PairScore& score) {
  PairScore s = MakePairScore(score.a, score.b, score.p);
  auto [it, inserted] = scores_.emplace(std::make_pair(s.a, s.b), s.p);
  if (!inserted && it->second != s.p) {
    throw Error("conflicting pair (" + s.a + ", " + s.b + ")");
  }
}

double PairScoreTable::Get(const std::string& a, const std::string& b) const {
  auto it = a < b ? scores_.find({a, b}) : scores_.find({b, a});
  return it == scores_.end() ? 0.0 : it->second;
}

std::vector<PairScore> PairScoreTable::ToVector() const {
  std::vector<PairScore> out;
  out.reserve(scores_.size());
  for (const auto& [key, p] : scores_) out.push_back({key.first, key.second, p});
  return out;
}

std::vector<PairScore> ParseScoresText(std::string_view text,
                                       std::string_view source) {
  PairScoreTable table;
  size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    std::istringstream in{std::string(line)};
    std::string a, b, p_text, extra;
    if (!(in >> a >> b >> p_text) || (in >> extra)) {
      throw Error(where + "expected \"a_id b_id p\"");
    }
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(p_text.data(), p_text.data() + p_text.size(), p);
    if (ec != std::errc() || ptr != p_text.data() + p_text.size()) {
      throw Error(where + "bad probability \"" + p_text + "\"");
    }
    try {
      table.Add(MakePairScore(a, b, p));
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  return table.ToVector();
}

std::vector<PairScore> LoadScores(const std::filesystem::path& path) {
  return ParseScoresText(ReadFile(path), path.string());
}

std::string SerializeScoresText(const std::vector<PairScore>& scores) {
  std::string out;
  char buf[64];
  for (const PairScore& s : scores) {
    std::snprintf(buf, sizeof(buf), "%.17g", s.p);
    out += s.a + " " + s.b + " " + buf + "\n";
  }
  return out;
}

std::vector<CorefCluster> Cluster(const std::vector<MentionEvent>& mentions,
                                  const PairScoreTable& scores, double threshold) {
  CheckThreshold(threshold);
  const size_t n = mentions.size();
  // sums[i][j] holds the total cross score between active clusters i and j.
  std::vector<std::vector<double>> sums(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double p = scores.Get(mentions[i].id, mentions[j].id);
      sums[i][j] = sums[j][i] = p;
    }
  }
  std::vector<std::vector<std::string>> members(n);
  std::vector<std::string> first_id(n);
  std::vector<bool> active(n, true);
  for (size_t i = 0; i < n; ++i) {
    members[i] = {mentions[i].id};
    first_id[i] = mentions[i].id;
  }

  auto pair_key = [&](size_t i, size_t j) {
    return first_id[i] < first_id[j] ? std::make_pair(first_id[i], first_id[j])
                                     : std::make_pair(first_id[j], first_id[i]);
  };

  while (true) {
    bool found = false;
    double best = 0.0;
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        double avg = sums[i][j] / static_cast<double>(members[i].size() *
                                                      members[j].size());
        if (!found || avg > best ||
            (avg == best && pair_key(i, j) < pair_key(bi, bj))) {
          found = true;
          best = avg;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found || best <= threshold) break;
    for (size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      sums[bi][k] += sums[bj][k];
      sums[k][bi] = sums[bi][k];
    }
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    first_id[bi] = std::min(first_id[bi], first_id[bj]);
    active[bj] = false;
  }

  std::vector<CorefCluster> out;
  for (size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    out.push_back(CorefCluster{SortedUnique(std::move(members[i]))});
  }
  std::sort(out.begin(), out.end(), [](const CorefCluster& x, const CorefCluster& y) {
    return x.mention_ids.front() < y.mention_ids.front();
  });
  return out;
}

std::vector<CorefCluster> Retain(const std::vector<CorefCluster>& clusters,
                                 const PairScoreTable& scores, double threshold) {
  CheckThreshold(threshold);
  std::vector<std::string> all;
  for (const CorefCluster& c : clusters) {
    all.insert(all.end(), c.mention_ids.begin(), c.mention_ids.end());
  }
  auto keep = [&](const std::string& id) {
    for (const std::string& other : all) {
      if (other != id && scores.Get(id, other) > threshold) return true;
    }
    return false;
  };
  std::vector<CorefCluster> out;
  for (const CorefCluster& c : clusters) {
    CorefCluster kept;
    for (const std::string& id : c.mention_ids) {
      if (keep(id)) kept.mention_ids.push_back(id);
    }
    if (!kept.mention_ids.empty()) out.push_back(std::move(kept));
  }
  return out;
}

}  // namespace cdee

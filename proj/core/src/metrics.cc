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

#include "cdee/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "cdee/assignment.h"
#include "cdee/text.h"
#include "json.hpp"

namespace cdee {
namespace {

using Rational = boost::multiprecision::cpp_rational;

// Rounds to the nearest double.
double ToDouble(const Rational& r) { return r.convert_to<double>(); }

double Ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// mention -> cluster index
std::map<std::string, size_t> ClusterIndex(const Partition& p) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < p.size(); ++i) {
    for (const std::string& m : p[i]) index.emplace(m, i);
  }
  return index;
}

double MucRecall(const Partition& key, const Partition& response) {
  std::map<std::string, size_t> where = ClusterIndex(response);
  size_t num = 0;
  size_t den = 0;
  for (const auto& k : key) {
    std::set<size_t> pieces;
    for (const std::string& m : k) pieces.insert(where.at(m));
    num += k.size() - pieces.size();
    den += k.size() - 1;
  }
  return Ratio(static_cast<double>(num), static_cast<double>(den));
}

// Summed as an exact rational so the result does not depend on the order
// of clusters or mentions.
double BCubedRecall(const Partition& key, const Partition& response) {
  std::map<std::string, size_t> where = ClusterIndex(response);
  size_t mentions = 0;
  Rational total = 0;
  for (const auto& k : key) {
    // Overlap sizes of this key cluster with each response cluster; every
    // mention in an overlap of size o contributes o / |k|.
    std::map<size_t, size_t> overlap;
    for (const std::string& m : k) ++overlap[where.at(m)];
    for (const auto& [j, o] : overlap) total += Rational(o * o, k.size());
    mentions += k.size();
  }
  return mentions == 0 ? 0.0 : ToDouble(total / Rational(mentions));
}

std::string Percent(double v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%6.2f", v * 100.0);
  return buf;
}

std::string PairEntity(const Argument& a) {
  return a.canonical_entity ? *a.canonical_entity : FoldKey(a.entity_surface);
}

std::string PairRole(const Argument& a) {
  return a.canonical_role ? *a.canonical_role : FoldKey(a.role);
}

using RolePairs = std::set<std::pair<std::string, std::string>>;
using EventKey = std::pair<std::string, EventType>;

std::map<EventKey, RolePairs> GroupPairs(const std::vector<ConceptEvent>& events) {
  std::map<EventKey, RolePairs> out;
  for (const ConceptEvent& e : events) {
    RolePairs& pairs = out[{e.collection_id, e.event_type}];
    for (const Argument& a : e.arguments) {
      std::string entity = PairEntity(a);
      if (entity.empty()) continue;
      pairs.emplace(PairRole(a), std::move(entity));
    }
  }
  return out;
}

// Number of pairs in `from` matched by some pair in `against`.
size_t CountMatched(const RolePairs& from, const RolePairs& against,
                    bool relaxed, bool from_is_pred) {
  size_t n = 0;
  for (const auto& [role, entity] : from) {
    if (!relaxed) {
      n += against.count({role, entity});
      continue;
    }
    bool hit = false;
    for (const auto& [other_role, other_entity] : against) {
      if (other_role != role) continue;
      const std::string& pred = from_is_pred ? entity : other_entity;
      const std::string& gold = from_is_pred ? other_entity : entity;
      if (gold.find(pred) != std::string::npos) {
        hit = true;
        break;
      }
    }
    n += hit;
  }
  return n;
}

nlohmann::ordered_json PrfJson(const PrfScore& s) {
  nlohmann::ordered_json j;
  j["recall"] = s.recall;
  j["precision"] = s.precision;
  j["f1"] = s.f1;
  return j;
}

}  // namespace

PrfScore MakePrf(double recall, double precision) {
  PrfScore s;
  s.recall = recall;
  s.precision = precision;
  s.f1 = recall + precision > 0.0
             ? 2.0 * precision * recall / (precision + recall)
             : 0.0;
  return s;
}

void CheckPartition(const Partition& partition) {
  std::set<std::string> seen;
  for (const auto& cluster : partition) {
    if (cluster.empty()) throw Error("partition contains an empty cluster");
    for (const std::string& m : cluster) {
      if (!seen.insert(m).second) {
        throw Error("mention \"" + m + "\" occurs in more than one cluster");
      }
    }
  }
}

std::pair<Partition, Partition> AddTwinlessSingletons(const Partition& key,
                                                      const Partition& response) {
  CheckPartition(key);
  CheckPartition(response);
  std::map<std::string, size_t> in_key = ClusterIndex(key);
  std::map<std::string, size_t> in_response = ClusterIndex(response);
  Partition k = key;
  Partition r = response;
  for (const auto& cluster : key) {
    for (const std::string& m : cluster) {
      if (in_response.count(m) == 0) r.push_back({m});
    }
  }
  for (const auto& cluster : response) {
    for (const std::string& m : cluster) {
      if (in_key.count(m) == 0) k.push_back({m});
    }
  }
  return {std::move(k), std::move(r)};
}

PrfScore Muc(const Partition& key, const Partition& response) {
  auto [k, r] = AddTwinlessSingletons(key, response);
  return MakePrf(MucRecall(k, r), MucRecall(r, k));
}

PrfScore BCubed(const Partition& key, const Partition& response) {
  auto [k, r] = AddTwinlessSingletons(key, response);
  return MakePrf(BCubedRecall(k, r), BCubedRecall(r, k));
}

PrfScore Ceaf(const Partition& key, const Partition& response) {
  auto [k, r] = AddTwinlessSingletons(key, response);
  if (k.empty() || r.empty()) return MakePrf(0.0, 0.0);

  std::map<std::string, size_t> where = ClusterIndex(r);
  // Overlap counts keep phi4 exact; the double matrix only drives alignment.
  std::vector<std::map<size_t, size_t>> overlap(k.size());
  WeightMatrix phi(k.size(), std::vector<double>(r.size(), 0.0));
  for (size_t i = 0; i < k.size(); ++i) {
    for (const std::string& m : k[i]) ++overlap[i][where.at(m)];
    for (const auto& [j, common] : overlap[i]) {
      phi[i][j] = 2.0 * static_cast<double>(common) /
                  static_cast<double>(k[i].size() + r[j].size());
    }
  }
  std::vector<int> alignment = MaxWeightAssignment(phi);
  Rational total = 0;
  for (size_t i = 0; i < k.size(); ++i) {
    if (alignment[i] < 0) continue;
    size_t j = static_cast<size_t>(alignment[i]);
    auto it = overlap[i].find(j);
    if (it == overlap[i].end()) continue;
    total += Rational(2 * it->second, k[i].size() + r[j].size());
  }
  double recall = ToDouble(total / Rational(k.size()));
  double precision = ToDouble(total / Rational(r.size()));
  return MakePrf(recall, precision);
}

double Conll(const PrfScore& muc, const PrfScore& b3, const PrfScore& ceaf) {
  // Summed exactly, so the result is the correctly rounded mean.
  return ToDouble((Rational(muc.f1) + Rational(b3.f1) + Rational(ceaf.f1)) / 3);
}

CorefScores ScoreCoreference(const Partition& key, const Partition& response) {
  CorefScores s;
  s.muc = Muc(key, response);
  s.b3 = BCubed(key, response);
  s.ceaf = Ceaf(key, response);
  s.conll_f1 = Conll(s.muc, s.b3, s.ceaf);
  return s;
}

PrfScore PrfType(const std::vector<TypedItem>& gold,
                 const std::vector<TypedItem>& pred) {
  std::set<TypedItem> gold_set(gold.begin(), gold.end());
  std::set<TypedItem> pred_set(pred.begin(), pred.end());
  size_t correct = 0;
  for (const TypedItem& item : pred_set) correct += gold_set.count(item);
  return MakePrf(
      Ratio(static_cast<double>(correct), static_cast<double>(gold_set.size())),
      Ratio(static_cast<double>(correct), static_cast<double>(pred_set.size())));
}

PrfScore PrfRoles(const std::vector<ConceptEvent>& gold,
                  const std::vector<ConceptEvent>& pred, bool relaxed) {
  std::map<EventKey, RolePairs> gold_pairs = GroupPairs(gold);
  std::map<EventKey, RolePairs> pred_pairs = GroupPairs(pred);
  static const RolePairs kNone;
  size_t gold_total = 0, pred_total = 0, gold_hit = 0, pred_hit = 0;
  for (const auto& [key, pairs] : gold_pairs) {
    gold_total += pairs.size();
    auto it = pred_pairs.find(key);
    gold_hit += CountMatched(pairs, it == pred_pairs.end() ? kNone : it->second,
                             relaxed, /*from_is_pred=*/false);
  }
  for (const auto& [key, pairs] : pred_pairs) {
    pred_total += pairs.size();
    auto it = gold_pairs.find(key);
    pred_hit += CountMatched(pairs, it == gold_pairs.end() ? kNone : it->second,
                             relaxed, /*from_is_pred=*/true);
  }
  return MakePrf(
      Ratio(static_cast<double>(gold_hit), static_cast<double>(gold_total)),
      Ratio(static_cast<double>(pred_hit), static_cast<double>(pred_total)));
}

double FleissKappa(const std::vector<std::vector<int>>& ratings, int raters) {
  if (raters < 2) throw Error("Fleiss' kappa needs at least two raters");
  if (ratings.empty()) throw Error("Fleiss' kappa needs at least one item");
  const size_t categories = ratings.front().size();
  const double n = raters;
  const double items = static_cast<double>(ratings.size());
  std::vector<double> column(categories, 0.0);
  double agreement_sum = 0.0;
  for (size_t i = 0; i < ratings.size(); ++i) {
    const auto& row = ratings[i];
    if (row.size() != categories) throw Error("Fleiss' kappa: ragged ratings matrix");
    long long sum = 0;
    double squares = 0.0;
    for (size_t j = 0; j < categories; ++j) {
      if (row[j] < 0) throw Error("Fleiss' kappa: negative rating count");
      sum += row[j];
      squares += static_cast<double>(row[j]) * row[j];
      column[j] += row[j];
    }
    if (sum != raters) {
      throw Error("Fleiss' kappa: row " + std::to_string(i) + " sums to " +
                  std::to_string(sum) + ", expected " + std::to_string(raters));
    }
    agreement_sum += (squares - n) / (n * (n - 1.0));
  }
  double p_bar = agreement_sum / items;
  double p_e = 0.0;
  for (double c : column) {
    double pj = c / (items * n);
    p_e += pj * pj;
  }
  if (p_e == 1.0) return 1.0;
  return (p_bar - p_e) / (1.0 - p_e);
}

EvalReport Evaluate(const std::vector<ConceptEvent>& gold,
                    const std::vector<ConceptEvent>& pred, bool relaxed) {
  EvalReport report;
  report.relaxed = relaxed;
  std::vector<TypedItem> gold_types, pred_types;
  for (const ConceptEvent& e : gold) gold_types.emplace_back(e.collection_id, e.event_type);
  for (const ConceptEvent& e : pred) pred_types.emplace_back(e.collection_id, e.event_type);
  report.type_classification = PrfType(gold_types, pred_types);
  report.role_extraction = PrfRoles(gold, pred, relaxed);

  bool gold_has_mentions = std::any_of(gold.begin(), gold.end(), [](const ConceptEvent& e) {
    return !e.mention_ids.empty();
  });
  if (gold_has_mentions) {
    auto to_partition = [](const std::vector<ConceptEvent>& events) {
      Partition p;
      for (const ConceptEvent& e : events) {
        if (e.mention_ids.empty()) continue;
        std::vector<std::string> cluster;
        for (const std::string& m : e.mention_ids) {
          cluster.push_back(e.collection_id + "/" + m);
        }
        p.push_back(std::move(cluster));
      }
      return p;
    };
    report.coreference = ScoreCoreference(to_partition(gold), to_partition(pred));
  }
  return report;
}

std::string EvalReportJson(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["type_classification"] = PrfJson(report.type_classification);
  j["role_extraction"] = PrfJson(report.role_extraction);
  j["relaxed"] = report.relaxed;
  if (report.coreference) {
    nlohmann::ordered_json c;
    c["muc"] = PrfJson(report.coreference->muc);
    c["b3"] = PrfJson(report.coreference->b3);
    c["ceaf"] = PrfJson(report.coreference->ceaf);
    c["conll_f1"] = report.coreference->conll_f1;
    j["coreference"] = std::move(c);
  } else {
    j["coreference"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string EvalReportTable(const EvalReport& report) {
  // Each score is six characters wide; a block is "R P F1" joined by spaces.
  const std::string kBlockHeader = "     R      P     F1";
  auto centered = [](std::string_view title, size_t width) {
    size_t left = (width - title.size()) / 2;
    return std::string(left, ' ') + std::string(title) +
           std::string(width - left - title.size(), ' ');
  };
  auto prf = [](const PrfScore& s) {
    return Percent(s.recall) + " " + Percent(s.precision) + " " + Percent(s.f1);
  };
  const size_t label_width = 16;
  auto label = [&](std::string_view text) {
    return std::string(text) + std::string(label_width - text.size(), ' ');
  };
  std::ostringstream out;
  out << "Extraction" << (report.relaxed ? " (relaxed)" : "") << "\n";
  out << label("") << kBlockHeader << "\n";
  out << label("Event type") << prf(report.type_classification) << "\n";
  out << label("Event role") << prf(report.role_extraction) << "\n";
  out << "\nCoreference\n";
  if (!report.coreference) {
    out << "  (gold events carry no mention ids)\n";
    return out.str();
  }
  const CorefScores& c = *report.coreference;
  const size_t block = kBlockHeader.size();
  out << centered("MUC", block) << " " << centered("B3", block) << " "
      << centered("CEAF", block) << "  CoNLL\n";
  out << kBlockHeader << " " << kBlockHeader << " " << kBlockHeader << "     F1\n";
  out << prf(c.muc) << " " << prf(c.b3) << " " << prf(c.ceaf) << " "
      << Percent(c.conll_f1) << "\n";
  return out.str();
}

Partition ParseClusterText(std::string_view text) {
  Partition p;
  for (const std::string& line : Split(text, '\n')) {
    std::istringstream in(line);
    std::vector<std::string> cluster;
    std::string id;
    while (in >> id) cluster.push_back(id);
    if (!cluster.empty()) p.push_back(std::move(cluster));
  }
  CheckPartition(p);
  return p;
}

}  // namespace cdee

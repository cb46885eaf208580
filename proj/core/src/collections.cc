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

#include "cdee/collections.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "cdee/text.h"
#include "json.hpp"

namespace cdee {
namespace {

size_t WordCount(std::string_view text) {
  size_t words = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

LengthStats Summarize(const std::vector<size_t>& values) {
  LengthStats s;
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  for (size_t v : values) s.total += v;
  s.mean = static_cast<double>(s.total) / static_cast<double>(values.size());
  return s;
}

nlohmann::ordered_json RowsJson(const std::vector<FrequencyRow>& rows) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const FrequencyRow& r : rows) {
    j.push_back({{"key", r.key}, {"count", r.count}});
  }
  return j;
}

nlohmann::ordered_json LengthJson(const LengthStats& s) {
  nlohmann::ordered_json j;
  j["min"] = s.min;
  j["max"] = s.max;
  j["mean"] = s.mean;
  j["total"] = s.total;
  return j;
}

std::string Fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

void AnchorGraph::Add(const Document& doc) {
  for (const Anchor& a : doc.anchors) {
    if (a.target_event_id.empty()) {
      throw Error("document \"" + doc.id + "\" has an anchor with an empty target");
    }
    targets_[doc.id].insert(a.target_event_id);
  }
}

std::map<std::string, std::vector<std::string>> AnchorGraph::Members() const {
  std::map<std::string, std::vector<std::string>> members;
  for (const auto& [doc_id, targets] : targets_) {
    for (const std::string& t : targets) members[t].push_back(doc_id);
  }
  return members;
}

std::vector<DocumentCollection> BuildCollections(const std::vector<Document>& docs) {
  return BuildCollections(docs, {});
}

std::vector<DocumentCollection> BuildCollections(
    const std::vector<Document>& docs, const std::vector<MentionEvent>& mentions) {
  std::map<std::string, const Document*> by_id;
  AnchorGraph graph;
  for (const Document& d : docs) {
    if (by_id.emplace(d.id, &d).second) graph.Add(d);
  }
  std::map<std::string, std::vector<const MentionEvent*>> mentions_by_doc;
  for (const MentionEvent& m : mentions) mentions_by_doc[m.doc_id].push_back(&m);

  std::vector<DocumentCollection> out;
  for (const auto& [target, members] : graph.Members()) {
    DocumentCollection c;
    c.id = target;
    for (const std::string& doc_id : members) {
      Document copy = *by_id.at(doc_id);
      copy.collection_id = target;
      c.documents.push_back(std::move(copy));
      auto it = mentions_by_doc.find(doc_id);
      if (it == mentions_by_doc.end()) continue;
      for (const MentionEvent* m : it->second) c.mention_events.push_back(*m);
    }
    out.push_back(std::move(c));
  }
  return out;
}

DocumentCollection CapCollection(const DocumentCollection& collection, size_t limit) {
  if (limit < 1) throw Error("collection cap must be at least 1");
  if (collection.documents.size() <= limit) return collection;

  std::map<std::string, size_t> mention_count;
  for (const MentionEvent& m : collection.mention_events) ++mention_count[m.doc_id];
  struct Rank {
    size_t mentions;
    size_t length;
    const std::string* id;
  };
  std::vector<Rank> ranks;
  for (const Document& d : collection.documents) {
    ranks.push_back({mention_count[d.id], CodePointLength(d.text), &d.id});
  }
  std::sort(ranks.begin(), ranks.end(), [](const Rank& x, const Rank& y) {
    if (x.mentions != y.mentions) return x.mentions > y.mentions;
    if (x.length != y.length) return x.length > y.length;
    return *x.id < *y.id;
  });
  std::set<std::string> keep;
  for (size_t i = 0; i < limit; ++i) keep.insert(*ranks[i].id);

  DocumentCollection out;
  out.id = collection.id;
  for (const Document& d : collection.documents) {
    if (keep.count(d.id) != 0) out.documents.push_back(d);
  }
  std::set<std::string> kept_mentions;
  for (const MentionEvent& m : collection.mention_events) {
    if (keep.count(m.doc_id) == 0) continue;
    out.mention_events.push_back(m);
    kept_mentions.insert(m.id);
  }
  for (const CorefCluster& cl : collection.clusters) {
    CorefCluster filtered;
    for (const std::string& id : cl.mention_ids) {
      if (kept_mentions.count(id) != 0) filtered.mention_ids.push_back(id);
    }
    if (!filtered.mention_ids.empty()) out.clusters.push_back(std::move(filtered));
  }
  for (const ConceptEvent& gold : collection.gold_concept_events) {
    ConceptEvent e = gold;
    auto dropped = [&](const std::string& doc) { return keep.count(doc) == 0; };
    std::erase_if(e.provenance, dropped);
    std::erase_if(e.mention_ids,
                  [&](const std::string& id) { return kept_mentions.count(id) == 0; });
    std::vector<Argument> args;
    for (Argument a : e.arguments) {
      std::erase_if(a.provenance, dropped);
      if (!a.source_doc.empty() && dropped(a.source_doc)) continue;
      args.push_back(std::move(a));
    }
    e.arguments = std::move(args);
    if (!e.provenance.empty()) out.gold_concept_events.push_back(std::move(e));
  }
  return out;
}

CorpusStats ComputeStats(const std::vector<DocumentCollection>& corpus) {
  CorpusStats s;
  std::vector<size_t> words;
  std::vector<size_t> sentences;
  for (const DocumentCollection& c : corpus) {
    ++s.collections;
    s.documents += c.documents.size();
    s.mention_events += c.mention_events.size();
    s.concept_events += c.gold_concept_events.size();
    ++s.collection_sizes[c.documents.size()];
    for (const ConceptEvent& e : c.gold_concept_events) {
      if (SortedUnique(e.provenance).size() >= 2) ++s.cross_document_events;
    }
    for (const Document& d : c.documents) {
      words.push_back(WordCount(d.text));
      // Without bounds a non-empty text is one sentence, as in extraction.
      size_t n = d.sentence_bounds.size();
      if (n == 0 && !d.text.empty()) n = 1;
      sentences.push_back(n);
      std::set<EventType> types;
      for (const MentionEvent& m : c.mention_events) {
        if (m.doc_id == d.id) types.insert(m.event_type);
      }
      for (EventType t : types) ++s.docs_per_type[static_cast<size_t>(t)];
    }
    for (const MentionEvent& m : c.mention_events) {
      ++s.triggers[FoldKey(m.trigger_surface)];
      for (const Argument& a : m.arguments) {
        ++s.roles[a.canonical_role ? *a.canonical_role : FoldKey(a.role)];
      }
    }
  }
  if (s.concept_events > 0) {
    s.cross_document_share = static_cast<double>(s.cross_document_events) /
                             static_cast<double>(s.concept_events);
  }
  s.doc_words = Summarize(words);
  s.doc_sentences = Summarize(sentences);
  return s;
}

std::vector<FrequencyRow> TopK(const std::map<std::string, size_t>& counts, size_t k) {
  std::vector<FrequencyRow> rows;
  for (const auto& [key, count] : counts) rows.push_back({key, count});
  std::stable_sort(rows.begin(), rows.end(), [](const FrequencyRow& x, const FrequencyRow& y) {
    return x.count > y.count;
  });
  if (rows.size() > k) rows.resize(k);
  return rows;
}

std::vector<FrequencyRow> BottomK(const std::map<std::string, size_t>& counts, size_t k) {
  std::vector<FrequencyRow> rows;
  for (const auto& [key, count] : counts) rows.push_back({key, count});
  std::stable_sort(rows.begin(), rows.end(), [](const FrequencyRow& x, const FrequencyRow& y) {
    return x.count < y.count;
  });
  if (rows.size() > k) rows.resize(k);
  return rows;
}

std::string CorpusStatsJson(const CorpusStats& s, size_t k) {
  nlohmann::ordered_json j;
  j["collections"] = s.collections;
  j["documents"] = s.documents;
  j["mention_events"] = s.mention_events;
  j["concept_events"] = s.concept_events;
  j["cross_document_events"] = s.cross_document_events;
  j["cross_document_share"] = s.cross_document_share;
  nlohmann::ordered_json per_type;
  for (EventType t : kAllEventTypes) {
    per_type[std::string(EventTypeName(t))] = s.docs_per_type[static_cast<size_t>(t)];
  }
  j["docs_per_type"] = std::move(per_type);
  nlohmann::ordered_json sizes;
  for (const auto& [size, n] : s.collection_sizes) sizes[std::to_string(size)] = n;
  j["collection_sizes"] = sizes.is_null() ? nlohmann::ordered_json::object() : sizes;
  j["unique_triggers"] = s.triggers.size();
  j["unique_roles"] = s.roles.size();
  j["top_triggers"] = RowsJson(TopK(s.triggers, k));
  j["bottom_triggers"] = RowsJson(BottomK(s.triggers, k));
  j["top_roles"] = RowsJson(TopK(s.roles, k));
  j["bottom_roles"] = RowsJson(BottomK(s.roles, k));
  j["doc_words"] = LengthJson(s.doc_words);
  j["doc_sentences"] = LengthJson(s.doc_sentences);
  return j.dump(2) + "\n";
}

std::string CorpusStatsTable(const CorpusStats& s, size_t k) {
  std::ostringstream out;
  out << "Corpus\n";
  out << "  collections            " << s.collections << "\n";
  out << "  documents              " << s.documents << "\n";
  out << "  mention events         " << s.mention_events << "\n";
  out << "  concept events         " << s.concept_events << "\n";
  out << "  cross-document events  " << s.cross_document_events << " ("
      << Fixed(s.cross_document_share * 100.0, 1) << "%)\n";
  out << "\nDocuments per event type\n";
  for (EventType t : kAllEventTypes) {
    out << "  " << EventTypeName(t) << "\t" << s.docs_per_type[static_cast<size_t>(t)]
        << "\n";
  }
  out << "\nCollection size\tcollections\n";
  for (const auto& [size, n] : s.collection_sizes) out << "  " << size << "\t" << n << "\n";
  auto table = [&](const char* title, const std::vector<FrequencyRow>& rows) {
    out << "\n" << title << "\n";
    for (const FrequencyRow& r : rows) out << "  " << r.key << "\t" << r.count << "\n";
  };
  table("Most frequent triggers", TopK(s.triggers, k));
  table("Least frequent triggers", BottomK(s.triggers, k));
  table("Most frequent roles", TopK(s.roles, k));
  table("Least frequent roles", BottomK(s.roles, k));
  out << "\nLength\tmin\tmax\tmean\n";
  out << "  words/doc\t" << s.doc_words.min << "\t" << s.doc_words.max << "\t"
      << Fixed(s.doc_words.mean, 1) << "\n";
  out << "  sentences/doc\t" << s.doc_sentences.min << "\t" << s.doc_sentences.max
      << "\t" << Fixed(s.doc_sentences.mean, 1) << "\n";
  return out.str();
}

}  // namespace cdee

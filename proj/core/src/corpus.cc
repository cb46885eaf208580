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

#include "cdee/corpus.h"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "cdee/text.h"
#include "json.hpp"

namespace cdee {
namespace {

using Json = nlohmann::ordered_json;

// Carries the offending field up to the line-level handler.
struct FieldError {
  std::string field;
  std::string message;
};

[[noreturn]] void FailField(std::string field, std::string message) {
  throw FieldError{std::move(field), std::move(message)};
}

const Json& Field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) FailField(name, "missing");
  return *it;
}

std::string GetString(const Json& j, const char* name) {
  const Json& v = Field(j, name);
  if (!v.is_string()) FailField(name, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> GetOptString(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) FailField(name, "expected a string or null");
  return it->get<std::string>();
}

std::vector<std::string> GetStrings(const Json& j, const char* name,
                                    bool required) {
  auto it = j.find(name);
  if (it == j.end()) {
    if (required) FailField(name, "missing");
    return {};
  }
  if (!it->is_array()) FailField(name, "expected an array of strings");
  std::vector<std::string> out;
  for (const Json& v : *it) {
    if (!v.is_string()) FailField(name, "expected an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Span SpanFromJson(const Json& v, const std::string& field) {
  if (!v.is_object()) FailField(field, "expected {\"start\":..,\"end\":..}");
  auto start = v.find("start");
  auto end = v.find("end");
  if (start == v.end() || end == v.end() || !start->is_number_unsigned() ||
      !end->is_number_unsigned()) {
    FailField(field, "span needs non-negative integer start and end");
  }
  return Span{start->get<size_t>(), end->get<size_t>()};
}

std::optional<Span> GetOptSpan(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return SpanFromJson(*it, name);
}

Json SpanToJson(const Span& s) {
  Json j;
  j["start"] = s.start;
  j["end"] = s.end;
  return j;
}

Json OptSpanToJson(const std::optional<Span>& s) {
  return s ? SpanToJson(*s) : Json(nullptr);
}

Json OptStringToJson(const std::optional<std::string>& s) {
  return s ? Json(*s) : Json(nullptr);
}

EventType GetEventType(const Json& j) {
  std::string label = GetString(j, "event_type");
  auto type = TryParseEventType(label);
  if (!type) FailField("event_type", "unknown event type \"" + label + "\"");
  return *type;
}

Argument ArgumentFromJson(const Json& j) {
  if (!j.is_object()) FailField("arguments", "expected an array of objects");
  Argument a;
  a.role = GetString(j, "role");
  a.canonical_role = GetOptString(j, "canonical_role");
  a.entity_surface = GetString(j, "entity_surface");
  a.canonical_entity = GetOptString(j, "canonical_entity");
  a.span = GetOptSpan(j, "span");
  a.source_doc = GetString(j, "source_doc");
  a.provenance = GetStrings(j, "provenance", /*required=*/false);
  return a;
}

Json ArgumentToJson(const Argument& a) {
  Json j;
  j["role"] = a.role;
  j["canonical_role"] = OptStringToJson(a.canonical_role);
  j["entity_surface"] = a.entity_surface;
  j["canonical_entity"] = OptStringToJson(a.canonical_entity);
  j["span"] = OptSpanToJson(a.span);
  j["source_doc"] = a.source_doc;
  j["provenance"] = a.provenance;
  return j;
}

std::vector<Argument> GetArguments(const Json& j) {
  const Json& v = Field(j, "arguments");
  if (!v.is_array()) FailField("arguments", "expected an array");
  std::vector<Argument> out;
  for (const Json& a : v) out.push_back(ArgumentFromJson(a));
  return out;
}

Json ArgumentsToJson(const std::vector<Argument>& args) {
  Json arr = Json::array();
  for (const Argument& a : args) arr.push_back(ArgumentToJson(a));
  return arr;
}

Document DocumentFromJson(const Json& j) {
  Document d;
  d.id = GetString(j, "id");
  d.collection_id = GetString(j, "collection_id");
  d.text = GetString(j, "text");
  const Json& bounds = Field(j, "sentence_bounds");
  if (!bounds.is_array()) FailField("sentence_bounds", "expected an array");
  for (const Json& s : bounds) {
    d.sentence_bounds.push_back(SpanFromJson(s, "sentence_bounds"));
  }
  const Json& anchors = Field(j, "anchors");
  if (!anchors.is_array()) FailField("anchors", "expected an array");
  for (const Json& a : anchors) {
    if (!a.is_object()) FailField("anchors", "expected an array of objects");
    Anchor anchor;
    anchor.target_event_id = GetString(a, "target_event_id");
    anchor.span = SpanFromJson(Field(a, "span"), "anchors.span");
    d.anchors.push_back(std::move(anchor));
  }
  return d;
}

Json DocumentToJson(const Document& d) {
  Json j;
  j["kind"] = "document";
  j["id"] = d.id;
  j["collection_id"] = d.collection_id;
  j["text"] = d.text;
  Json bounds = Json::array();
  for (const Span& s : d.sentence_bounds) bounds.push_back(SpanToJson(s));
  j["sentence_bounds"] = std::move(bounds);
  Json anchors = Json::array();
  for (const Anchor& a : d.anchors) {
    Json aj;
    aj["target_event_id"] = a.target_event_id;
    aj["span"] = SpanToJson(a.span);
    anchors.push_back(std::move(aj));
  }
  j["anchors"] = std::move(anchors);
  return j;
}

MentionEvent MentionFromJson(const Json& j) {
  MentionEvent m;
  m.id = GetString(j, "id");
  m.doc_id = GetString(j, "doc_id");
  m.event_type = GetEventType(j);
  m.trigger_surface = GetString(j, "trigger_surface");
  m.trigger_span = GetOptSpan(j, "trigger_span");
  m.arguments = GetArguments(j);
  return m;
}

Json MentionToJson(const MentionEvent& m) {
  Json j;
  j["kind"] = "mention_event";
  j["id"] = m.id;
  j["doc_id"] = m.doc_id;
  j["event_type"] = std::string(EventTypeName(m.event_type));
  j["trigger_surface"] = m.trigger_surface;
  j["trigger_span"] = OptSpanToJson(m.trigger_span);
  j["arguments"] = ArgumentsToJson(m.arguments);
  return j;
}

ConceptEvent ConceptFromJson(const Json& j) {
  ConceptEvent e;
  e.collection_id = GetString(j, "collection_id");
  e.event_type = GetEventType(j);
  e.triggers = GetStrings(j, "triggers", /*required=*/true);
  e.arguments = GetArguments(j);
  e.provenance = GetStrings(j, "provenance", /*required=*/true);
  e.mention_ids = GetStrings(j, "mention_ids", /*required=*/false);
  return e;
}

Json ConceptToJson(const ConceptEvent& e, const char* kind) {
  Json j;
  j["kind"] = kind;
  j["collection_id"] = e.collection_id;
  j["event_type"] = std::string(EventTypeName(e.event_type));
  j["triggers"] = e.triggers;
  j["arguments"] = ArgumentsToJson(e.arguments);
  j["provenance"] = e.provenance;
  j["mention_ids"] = e.mention_ids;
  return j;
}

// Iterates the non-blank lines of `text`, handing each parsed record to
// `fn` and converting field errors into line-numbered Errors.
template <typename Fn>
void ForEachRecord(std::string_view text, std::string_view source, Fn&& fn) {
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (Trim(line).empty()) {
      if (eol == text.size()) break;
      continue;
    }
    std::string where =
        std::string(source) + ":" + std::to_string(line_no) + ": ";
    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ValidationError(where + "malformed record: " + e.what());
    }
    if (!record.is_object()) throw ValidationError(where + "record is not an object");
    try {
      std::string kind = GetString(record, "kind");
      fn(kind, record, where);
    } catch (const FieldError& e) {
      throw ValidationError(where + "field '" + e.field + "': " + e.message);
    }
    if (eol == text.size()) break;
  }
}

std::string Dump(const Json& j) { return j.dump() + "\n"; }

// "Type[id].field: rule"
std::string Violation(std::string_view type, std::string_view id,
                      std::string_view field, std::string_view rule) {
  std::string out(type);
  if (!id.empty()) out += "[" + std::string(id) + "]";
  out += ".";
  out += field;
  out += ": ";
  out += rule;
  return out;
}

void CheckSpan(const Span& span, size_t text_length, std::string_view type,
               std::string_view id, std::string_view field,
               std::vector<std::string>* out) {
  if (span.start >= span.end) {
    out->push_back(Violation(type, id, field, "span start must be < end"));
  } else if (span.end > text_length) {
    out->push_back(
        Violation(type, id, field, "span end exceeds document text length"));
  }
}

void CheckArgument(const Argument& a, std::string_view owner_type,
                   std::string_view owner_id, size_t index,
                   const DocumentCollection* collection,
                   const ValidateOptions& options,
                   std::vector<std::string>* out) {
  std::string field = "arguments[" + std::to_string(index) + "]";
  if (a.role.empty()) {
    out->push_back(Violation(owner_type, owner_id, field + ".role",
                             "role must be non-empty"));
  }
  if (a.canonical_role && options.is_known_role &&
      !options.is_known_role(*a.canonical_role)) {
    out->push_back(Violation(owner_type, owner_id, field + ".canonical_role",
                             "canonical role \"" + *a.canonical_role +
                                 "\" is not in the role map"));
  }
  if (collection == nullptr) return;
  const Document* doc = collection->FindDocument(a.source_doc);
  if (doc == nullptr) {
    out->push_back(Violation(owner_type, owner_id, field + ".source_doc",
                             "unknown document \"" + a.source_doc + "\""));
  } else if (a.span) {
    CheckSpan(*a.span, CodePointLength(doc->text), owner_type, owner_id,
              field + ".span", out);
  }
}

}  // namespace

std::vector<std::string> ValidateConceptEvent(
    const ConceptEvent& event, const DocumentCollection* owner) {
  std::vector<std::string> out;
  constexpr std::string_view kType = "ConceptEvent";
  const std::string& id = event.collection_id;
  if (owner != nullptr && event.collection_id != owner->id) {
    out.push_back(Violation(kType, id, "collection_id",
                            "must equal owning collection \"" + owner->id +
                                "\""));
  }
  std::set<std::pair<std::string, std::string>> pairs;
  std::map<std::string, std::string> role_of_entity;
  std::set<std::string> multi_role_reported;
  for (size_t i = 0; i < event.arguments.size(); ++i) {
    const Argument& a = event.arguments[i];
    std::string field = "arguments[" + std::to_string(i) + "]";
    if (!a.canonical_role || !a.canonical_entity) {
      out.push_back(Violation(kType, id, field,
                              "canonical_role and canonical_entity required"));
      continue;
    }
    if (!pairs.emplace(*a.canonical_role, *a.canonical_entity).second) {
      out.push_back(Violation(kType, id, field,
                              "duplicate (canonical_role, canonical_entity)"));
      continue;
    }
    auto [it, inserted] =
        role_of_entity.emplace(*a.canonical_entity, *a.canonical_role);
    if (!inserted && it->second != *a.canonical_role &&
        multi_role_reported.insert(*a.canonical_entity).second) {
      out.push_back(Violation(kType, id, field,
                              "entity has multiple roles (\"" +
                                  *a.canonical_entity + "\")"));
    }
  }
  if (owner != nullptr) {
    for (const std::string& doc_id : event.provenance) {
      if (owner->FindDocument(doc_id) == nullptr) {
        out.push_back(Violation(kType, id, "provenance",
                                "document \"" + doc_id +
                                    "\" is not in the collection"));
      }
    }
  }
  return out;
}

std::vector<std::string> Validate(const DocumentCollection& c,
                                  const ValidateOptions& options) {
  std::vector<std::string> out;
  if (c.documents.empty()) {
    out.push_back(Violation("DocumentCollection", c.id, "documents",
                            "collection has no documents"));
  } else if (c.documents.size() > kMaxCollectionSize) {
    out.push_back(Violation("DocumentCollection", c.id, "documents",
                            "collection size exceeds 10 (has " +
                                std::to_string(c.documents.size()) + ")"));
  }

  std::set<std::string> doc_ids;
  for (const Document& d : c.documents) {
    if (!doc_ids.insert(d.id).second) {
      out.push_back(Violation("Document", d.id, "id", "duplicate document id"));
    }
    if (d.collection_id != c.id) {
      out.push_back(Violation("Document", d.id, "collection_id",
                              "must equal owning collection \"" + c.id + "\""));
    }
    size_t len = CodePointLength(d.text);
    size_t prev_end = 0;
    for (size_t i = 0; i < d.sentence_bounds.size(); ++i) {
      const Span& s = d.sentence_bounds[i];
      std::string field = "sentence_bounds[" + std::to_string(i) + "]";
      CheckSpan(s, len, "Document", d.id, field, &out);
      if (i > 0 && s.start < prev_end) {
        out.push_back(Violation("Document", d.id, field,
                                "sentences must be ordered and non-overlapping"));
      }
      prev_end = s.end;
    }
    for (size_t i = 0; i < d.anchors.size(); ++i) {
      const Anchor& a = d.anchors[i];
      std::string field = "anchors[" + std::to_string(i) + "]";
      if (a.target_event_id.empty()) {
        out.push_back(Violation("Document", d.id, field + ".target_event_id",
                                "must be non-empty"));
      }
      CheckSpan(a.span, len, "Document", d.id, field + ".span", &out);
    }
  }

  std::set<std::string> mention_ids;
  for (const MentionEvent& m : c.mention_events) {
    if (!mention_ids.insert(m.id).second) {
      out.push_back(Violation("MentionEvent", m.id, "id", "duplicate mention id"));
    }
    if (m.trigger_surface.empty()) {
      out.push_back(Violation("MentionEvent", m.id, "trigger_surface",
                              "must be non-empty"));
    }
    const Document* doc = c.FindDocument(m.doc_id);
    if (doc == nullptr) {
      out.push_back(Violation("MentionEvent", m.id, "doc_id",
                              "unknown document \"" + m.doc_id + "\""));
    } else if (m.trigger_span) {
      CheckSpan(*m.trigger_span, CodePointLength(doc->text), "MentionEvent",
                m.id, "trigger_span", &out);
    }
    for (size_t i = 0; i < m.arguments.size(); ++i) {
      const Argument& a = m.arguments[i];
      if (a.source_doc != m.doc_id) {
        out.push_back(Violation("MentionEvent", m.id,
                                "arguments[" + std::to_string(i) + "].source_doc",
                                "must equal doc_id \"" + m.doc_id + "\""));
        continue;
      }
      CheckArgument(a, "MentionEvent", m.id, i, &c, options, &out);
    }
  }

  for (size_t i = 0; i < c.clusters.size(); ++i) {
    const CorefCluster& cl = c.clusters[i];
    std::string id = c.id + "#" + std::to_string(i);
    if (cl.mention_ids.empty()) {
      out.push_back(Violation("CorefCluster", id, "mention_ids",
                              "cluster must be non-empty"));
    }
    std::set<std::string> seen;
    for (const std::string& mid : cl.mention_ids) {
      if (!seen.insert(mid).second) {
        out.push_back(Violation("CorefCluster", id, "mention_ids",
                                "duplicate mention id \"" + mid + "\""));
      }
      if (mention_ids.count(mid) == 0) {
        out.push_back(Violation("CorefCluster", id, "mention_ids",
                                "unknown mention \"" + mid + "\""));
      }
    }
  }

  for (const ConceptEvent& e : c.gold_concept_events) {
    for (std::string& v : ValidateConceptEvent(e, &c)) out.push_back(std::move(v));
    for (size_t i = 0; i < e.arguments.size(); ++i) {
      CheckArgument(e.arguments[i], "ConceptEvent", e.collection_id, i, &c,
                    options, &out);
    }
  }
  return out;
}

std::vector<DocumentCollection> ParseCorpusText(std::string_view text,
                                                std::string_view source) {
  std::vector<DocumentCollection> corpus;
  std::set<std::string> collection_ids;

  ForEachRecord(text, source, [&](const std::string& kind, const Json& j,
                                  const std::string& where) {
    if (kind == "collection") {
      std::string id = GetString(j, "id");
      if (!collection_ids.insert(id).second) {
        throw ValidationError(where + "duplicate collection id \"" + id + "\"");
      }
      corpus.emplace_back().id = std::move(id);
      return;
    }
    if (corpus.empty()) {
      throw ValidationError(where + "\"" + kind + "\" record before any collection record");
    }
    DocumentCollection& current = corpus.back();
    if (kind == "document") {
      Document d = DocumentFromJson(j);
      if (d.collection_id != current.id) {
        FailField("collection_id", "document belongs to \"" + d.collection_id +
                                       "\" but appears in section of \"" +
                                       current.id + "\"");
      }
      current.documents.push_back(std::move(d));
    } else if (kind == "mention_event") {
      current.mention_events.push_back(MentionFromJson(j));
    } else if (kind == "cluster") {
      if (GetString(j, "collection_id") != current.id) {
        FailField("collection_id", "does not match the enclosing collection");
      }
      CorefCluster cl;
      cl.mention_ids = GetStrings(j, "mention_ids", /*required=*/true);
      current.clusters.push_back(std::move(cl));
    } else if (kind == "gold_concept_event") {
      ConceptEvent e = ConceptFromJson(j);
      if (e.collection_id != current.id) {
        FailField("collection_id", "does not match the enclosing collection");
      }
      current.gold_concept_events.push_back(std::move(e));
    } else {
      FailField("kind", "unknown record kind \"" + kind + "\"");
    }
  });

  for (const DocumentCollection& c : corpus) {
    std::vector<std::string> violations = Validate(c);
    if (!violations.empty()) {
      throw ValidationError(std::string(source) + ": invalid collection \"" + c.id +
                  "\": " + violations.front());
    }
  }
  return corpus;
}

std::string SerializeCorpusText(const std::vector<DocumentCollection>& corpus) {
  std::string out;
  for (const DocumentCollection& c : corpus) {
    Json header;
    header["kind"] = "collection";
    header["id"] = c.id;
    out += Dump(header);
    for (const Document& d : c.documents) out += Dump(DocumentToJson(d));
    for (const MentionEvent& m : c.mention_events) out += Dump(MentionToJson(m));
    for (const CorefCluster& cl : c.clusters) {
      Json j;
      j["kind"] = "cluster";
      j["collection_id"] = c.id;
      j["mention_ids"] = cl.mention_ids;
      out += Dump(j);
    }
    for (const ConceptEvent& e : c.gold_concept_events) {
      out += Dump(ConceptToJson(e, "gold_concept_event"));
    }
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open \"" + path.string() + "\" for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open \"" + path.string() + "\" for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing \"" + path.string() + "\"");
}

std::vector<DocumentCollection> ParseCorpus(const std::filesystem::path& path) {
  return ParseCorpusText(ReadFile(path), path.string());
}

void SerializeCorpus(const std::vector<DocumentCollection>& corpus,
                     const std::filesystem::path& path) {
  WriteFile(path, SerializeCorpusText(corpus));
}

std::vector<MentionEvent> ParseMentionRecords(const std::filesystem::path& path) {
  std::vector<MentionEvent> out;
  ForEachRecord(ReadFile(path), path.string(),
                [&](const std::string& kind, const Json& j, const std::string&) {
                  if (kind != "mention_event") {
                    FailField("kind", "expected \"mention_event\", got \"" +
                                          kind + "\"");
                  }
                  out.push_back(MentionFromJson(j));
                });
  return out;
}

std::string SerializeMentionRecords(const std::vector<MentionEvent>& mentions) {
  std::string out;
  for (const MentionEvent& m : mentions) out += Dump(MentionToJson(m));
  return out;
}

std::string SerializeConceptEventsText(const std::vector<ConceptEvent>& events) {
  std::string out;
  for (const ConceptEvent& e : events) out += Dump(ConceptToJson(e, "concept_event"));
  return out;
}

void WriteConceptEvents(const std::vector<ConceptEvent>& events,
                        const std::filesystem::path& path) {
  WriteFile(path, SerializeConceptEventsText(events));
}

std::vector<ConceptEvent> ReadConceptEventsText(std::string_view text,
                                                std::string_view source) {
  std::vector<ConceptEvent> out;
  ForEachRecord(text, source,
                [&](const std::string& kind, const Json& j, const std::string&) {
                  if (kind == "concept_event" || kind == "gold_concept_event") {
                    out.push_back(ConceptFromJson(j));
                  }
                });
  return out;
}

std::vector<ConceptEvent> ReadConceptEvents(const std::filesystem::path& path) {
  return ReadConceptEventsText(ReadFile(path), path.string());
}

}  // namespace cdee

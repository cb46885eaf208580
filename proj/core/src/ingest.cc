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

#include "cdee/ingest.h"

#include <algorithm>
#include <iterator>
#include <optional>
#include <set>

#include "cdee/corpus.h"
#include "cdee/text.h"

namespace cdee {
namespace {

struct Hit {
  size_t begin;  // bytes
  size_t end;
  const std::string* key;
};

bool IsUtf8Continuation(char c) {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

// Leftmost-longest, non-overlapping scan for the keys of `table`. With
// `word_bounded`, a hit must not touch an ASCII alphanumeric on either side.
template <typename Table>
std::vector<Hit> ScanKeys(std::string_view text, const Table& table,
                          bool word_bounded) {
  std::vector<Hit> hits;
  size_t i = 0;
  while (i < text.size()) {
    if (IsUtf8Continuation(text[i])) {
      ++i;
      continue;
    }
    const std::string* best = nullptr;
    for (const auto& [key, value] : table) {
      if (key.empty() || key.size() > text.size() - i) continue;
      if (text.compare(i, key.size(), key) != 0) continue;
      if (word_bounded) {
        size_t e = i + key.size();
        if (i > 0 && IsAsciiAlnum(text[i - 1])) continue;
        if (e < text.size() && IsAsciiAlnum(text[e])) continue;
      }
      if (best == nullptr || key.size() > best->size()) best = &key;
    }
    if (best != nullptr) {
      hits.push_back(Hit{i, i + best->size(), best});
      i += best->size();
    } else {
      ++i;
    }
  }
  return hits;
}

bool Overlaps(const Hit& a, const Hit& b) {
  return a.begin < b.end && b.begin < a.end;
}

}  // namespace

void ExtractionLexicon::AddTrigger(const std::string& surface, EventType type) {
  if (surface.empty()) throw Error("lexicon: empty trigger surface");
  auto [it, inserted] = triggers.emplace(surface, type);
  if (!inserted && it->second != type) {
    throw Error("lexicon: trigger \"" + surface + "\" maps to both " +
                std::string(EventTypeName(it->second)) + " and " +
                std::string(EventTypeName(type)));
  }
}

void ExtractionLexicon::AddRoleCue(const std::string& cue,
                                   const std::string& role) {
  if (cue.empty() || role.empty()) throw Error("lexicon: empty role cue");
  auto [it, inserted] = role_cues.emplace(cue, role);
  if (!inserted && it->second != role) {
    throw Error("lexicon: cue \"" + cue + "\" maps to two roles");
  }
}

ExtractionLexicon ParseLexiconText(std::string_view text,
                                   std::string_view source) {
  ExtractionLexicon lexicon;
  enum class Section { kNone, kTriggers, kCues } section = Section::kNone;
  size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    if (line == "[triggers]") {
      section = Section::kTriggers;
      continue;
    }
    if (line == "[role_cues]") {
      section = Section::kCues;
      continue;
    }
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() != 2) throw Error(where + "expected two tab-separated columns");
    try {
      switch (section) {
        case Section::kTriggers:
          lexicon.AddTrigger(cols[0], ParseEventType(Trim(cols[1])));
          break;
        case Section::kCues:
          lexicon.AddRoleCue(cols[0], std::string(Trim(cols[1])));
          break;
        case Section::kNone:
          throw Error("entry outside [triggers] or [role_cues]");
      }
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  return lexicon;
}

ExtractionLexicon LoadLexicon(const std::filesystem::path& path) {
  return ParseLexiconText(ReadFile(path), path.string());
}

ExtractionMap GroupExtractions(std::vector<MentionEvent> mentions,
                               const std::vector<Document>& documents) {
  std::set<std::string> doc_ids;
  for (const Document& d : documents) doc_ids.insert(d.id);
  std::set<std::string> seen;
  ExtractionMap out;
  for (MentionEvent& m : mentions) {
    if (doc_ids.count(m.doc_id) == 0) {
      throw Error("dangling doc_id \"" + m.doc_id + "\" in mention \"" + m.id +
                  "\"");
    }
    if (!seen.insert(m.id).second) {
      throw Error("duplicate mention id \"" + m.id + "\"");
    }
    out[m.doc_id].push_back(std::move(m));
  }
  return out;
}

ExtractionMap LoadExtractions(const std::filesystem::path& path,
                              const std::vector<Document>& documents) {
  try {
    return GroupExtractions(ParseMentionRecords(path), documents);
  } catch (const Error& e) {
    std::string msg = e.what();
    if (msg.rfind(path.string(), 0) == 0) throw;
    throw Error(path.string() + ": " + msg);
  }
}

void AttachExtractions(const ExtractionMap& extractions,
                       std::vector<DocumentCollection>& corpus) {
  for (DocumentCollection& c : corpus) {
    c.mention_events.clear();
    c.clusters.clear();
    for (const Document& d : c.documents) {
      auto it = extractions.find(d.id);
      if (it == extractions.end()) continue;
      c.mention_events.insert(c.mention_events.end(), it->second.begin(),
                              it->second.end());
    }
  }
}

std::vector<MentionEvent> LexiconExtract(const Document& doc,
                                         const ExtractionLexicon& lexicon) {
  const std::string_view text = doc.text;
  // Hits are sorted by begin and never overlap each other.
  std::vector<Hit> triggers = ScanKeys(text, lexicon.triggers, false);
  if (triggers.empty()) return {};
  // First trigger whose begin is >= byte.
  auto trigger_from = [&](size_t byte) {
    return std::lower_bound(triggers.begin(), triggers.end(), byte,
                            [](const Hit& h, size_t b) { return h.begin < b; });
  };

  std::vector<Hit> cues;
  for (const Hit& cue : ScanKeys(text, lexicon.role_cues, true)) {
    auto next = trigger_from(cue.begin);
    bool inside_trigger = (next != triggers.end() && Overlaps(*next, cue)) ||
                          (next != triggers.begin() && Overlaps(*std::prev(next), cue));
    if (!inside_trigger) cues.push_back(cue);
  }

  // code_point[i] = number of code points starting before byte i;
  // byte_of[c] = byte where code point c starts (text size past the end).
  std::vector<size_t> code_point(text.size() + 1, 0);
  std::vector<size_t> byte_of;
  for (size_t i = 0; i < text.size(); ++i) {
    bool lead = !IsUtf8Continuation(text[i]);
    if (lead) byte_of.push_back(i);
    code_point[i + 1] = code_point[i] + (lead ? 1 : 0);
  }
  auto to_byte = [&](size_t cp) { return cp < byte_of.size() ? byte_of[cp] : text.size(); };

  // Sentence ranges in bytes; the whole text when none are given.
  std::vector<std::pair<size_t, size_t>> sentences;
  for (const Span& s : doc.sentence_bounds) {
    sentences.emplace_back(to_byte(s.start), to_byte(s.end));
  }
  if (sentences.empty()) sentences.emplace_back(0, text.size());
  bool ordered = true;
  for (size_t i = 1; i < sentences.size(); ++i) {
    ordered = ordered && sentences[i - 1].second <= sentences[i].first;
  }
  // First sentence (in input order) containing byte.
  auto sentence_of = [&](size_t byte) -> std::optional<size_t> {
    if (ordered) {
      auto it = std::upper_bound(sentences.begin(), sentences.end(), byte,
                                 [](size_t b, const auto& s) { return b < s.first; });
      if (it == sentences.begin()) return std::nullopt;
      --it;
      if (byte >= it->second) return std::nullopt;
      return static_cast<size_t>(it - sentences.begin());
    }
    for (size_t i = 0; i < sentences.size(); ++i) {
      if (byte >= sentences[i].first && byte < sentences[i].second) return i;
    }
    return std::nullopt;
  };

  // Entities run from the end of the cue to the nearest stop.
  std::vector<std::vector<Argument>> by_sentence(sentences.size());
  for (size_t k = 0; k < cues.size(); ++k) {
    const Hit& cue = cues[k];
    auto sentence = sentence_of(cue.begin);
    if (!sentence) continue;
    size_t limit = sentences[*sentence].second;
    if (k + 1 < cues.size()) limit = std::min(limit, cues[k + 1].begin);
    auto next_trigger = trigger_from(cue.end);
    if (next_trigger != triggers.end()) limit = std::min(limit, next_trigger->begin);
    size_t begin = cue.end;
    if (begin >= limit) continue;
    std::string_view raw = text.substr(begin, limit - begin);
    raw = raw.substr(0, raw.find_first_of(",;"));
    size_t lead = raw.find_first_not_of(" \t\r\n");
    if (lead == std::string_view::npos) continue;
    std::string_view entity = raw.substr(lead);
    while (!entity.empty() &&
           std::string_view(" \t\r\n.!?:").find(entity.back()) !=
               std::string_view::npos) {
      entity.remove_suffix(1);
    }
    if (entity.empty()) continue;
    size_t entity_begin = begin + lead;
    Argument a;
    a.role = lexicon.role_cues.at(*cue.key);
    a.entity_surface = std::string(entity);
    a.span = Span{code_point[entity_begin], code_point[entity_begin + entity.size()]};
    a.source_doc = doc.id;
    by_sentence[*sentence].push_back(std::move(a));
  }

  std::vector<MentionEvent> out;
  out.reserve(triggers.size());
  for (size_t k = 0; k < triggers.size(); ++k) {
    const Hit& t = triggers[k];
    MentionEvent m;
    m.id = doc.id + ":m" + std::to_string(k);
    m.doc_id = doc.id;
    m.event_type = lexicon.triggers.at(*t.key);
    m.trigger_surface = *t.key;
    m.trigger_span = Span{code_point[t.begin], code_point[t.end]};
    if (auto sentence = sentence_of(t.begin)) m.arguments = by_sentence[*sentence];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace cdee

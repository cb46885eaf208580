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

#include "cdee/pipeline.h"

#include <algorithm>
#include <charconv>
#include <exception>
#include <mutex>
#include <thread>

#include "cdee/corpus.h"
#include "cdee/ingest.h"
#include "cdee/metrics.h"
#include "cdee/text.h"
#include "json.hpp"

namespace cdee {
namespace {

namespace fs = std::filesystem;

double ParseDouble(std::string_view text, const std::string& key) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("bad number \"" + std::string(text) + "\" for " + key);
  }
  return value;
}

bool ParseBool(std::string_view text, const std::string& key) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ValidationError("expected true or false for " + key + ", got \"" +
                        std::string(text) + "\"");
}

// Runs fn, prefixing any error with the stage name and keeping its kind.
template <typename Fn>
auto InStage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
  std::string prefix = std::string(stage) + ": ";
  try {
    return fn();
  } catch (const ValidationError& e) {
    throw ValidationError(prefix + e.what());
  } catch (const std::exception& e) {
    throw Error(prefix + e.what());
  }
}

fs::path Artifact(const PipelineConfig& config, std::string_view name) {
  return config.output_dir / fs::path(std::string(name));
}

// The artifact `name`, which `producer` writes.
fs::path RequireArtifact(const PipelineConfig& config, std::string_view name,
                         std::string_view producer) {
  fs::path path = Artifact(config, name);
  if (!fs::exists(path)) {
    throw Error("missing input \"" + path.string() + "\"; run the " +
                std::string(producer) + " stage first");
  }
  return path;
}

void EnsureOutputDir(const PipelineConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw Error("cannot create output directory \"" + config.output_dir.string() +
                "\": " + ec.message());
  }
}

RoleMap LoadRoles(const PipelineConfig& config) {
  return config.role_map.empty() ? RoleMap() : LoadRoleMap(config.role_map);
}

RoleHierarchy LoadHierarchy(const PipelineConfig& config) {
  return config.hierarchy.empty() ? RoleHierarchy::Default()
                                  : LoadRoleHierarchy(config.hierarchy);
}

}  // namespace

void PipelineConfig::Check() const {
  if (!(coref_threshold >= 0.0 && coref_threshold <= 1.0)) {
    throw ValidationError("coref threshold " + std::to_string(coref_threshold) +
                          " is outside [0, 1]");
  }
  if (workers == 0) throw ValidationError("workers must be at least 1");
  if (corpus.empty()) throw ValidationError("no corpus configured");
  try {
    weights.Check();
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  const std::pair<const char*, const fs::path*> inputs[] = {
      {"corpus", &corpus},       {"extractions", &extractions},
      {"lexicon", &lexicon},     {"aliases", &aliases},
      {"gazetteer", &gazetteer}, {"role_map", &role_map},
      {"hierarchy", &hierarchy}, {"role_orders", &role_orders},
      {"coref_scores", &coref_scores}};
  for (const auto& [key, path] : inputs) {
    if (!path->empty() && !fs::exists(*path)) {
      throw ValidationError(std::string(key) + " file \"" + path->string() +
                            "\" does not exist");
    }
  }
}

PipelineConfig ParsePipelineConfigText(std::string_view text, const fs::path& base_dir,
                                       std::string_view source) {
  PipelineConfig config;
  config.output_dir = base_dir / config.output_dir;
  size_t line_no = 0;
  for (const std::string& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    line = line.substr(0, line.find('#'));
    line = Trim(line);
    if (line.empty()) continue;
    std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ValidationError(where + "expected key = value");
    std::string key(Trim(line.substr(0, eq)));
    std::string_view value = Trim(line.substr(eq + 1));
    auto path = [&] { return value.empty() ? fs::path() : base_dir / fs::path(value); };
    try {
      if (key == "corpus") {
        config.corpus = path();
      } else if (key == "extractions") {
        config.extractions = path();
      } else if (key == "lexicon") {
        config.lexicon = path();
      } else if (key == "aliases") {
        config.aliases = path();
      } else if (key == "gazetteer") {
        config.gazetteer = path();
      } else if (key == "role_map") {
        config.role_map = path();
      } else if (key == "hierarchy") {
        config.hierarchy = path();
      } else if (key == "role_orders") {
        config.role_orders = path();
      } else if (key == "coref_scores") {
        config.coref_scores = path();
      } else if (key == "output_dir") {
        config.output_dir = path();
      } else if (key == "coref_threshold") {
        config.coref_threshold = ParseDouble(value, key);
      } else if (key == "strategy") {
        auto s = ParseMergeStrategy(value);
        if (!s) throw ValidationError("unknown strategy \"" + std::string(value) + "\"");
        config.strategy = *s;
      } else if (key == "date_order") {
        auto d = ParseDateOrder(value);
        if (!d) throw ValidationError("unknown date order \"" + std::string(value) + "\"");
        config.date_order = *d;
      } else if (key == "workers") {
        double w = ParseDouble(value, key);
        if (w < 1 || w != static_cast<double>(static_cast<size_t>(w))) {
          throw ValidationError("workers must be a positive integer");
        }
        config.workers = static_cast<size_t>(w);
      } else if (key == "relaxed_eval") {
        config.relaxed_eval = ParseBool(value, key);
      } else if (key == "weights") {
        std::vector<std::string> parts = Split(value, ',');
        if (parts.size() != 4) {
          throw ValidationError("weights needs trigger,type,argument,bias");
        }
        config.weights.w_trigger = ParseDouble(Trim(parts[0]), key);
        config.weights.w_type = ParseDouble(Trim(parts[1]), key);
        config.weights.w_arg_overlap = ParseDouble(Trim(parts[2]), key);
        config.weights.bias = ParseDouble(Trim(parts[3]), key);
      } else {
        throw ValidationError("unknown key \"" + key + "\"");
      }
    } catch (const Error& e) {
      throw ValidationError(where + e.what());
    }
  }
  return config;
}

PipelineConfig LoadPipelineConfig(const fs::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  return ParsePipelineConfigText(text, path.parent_path(), path.string());
}

void ParallelFor(size_t n, size_t workers, const std::function<void(size_t)>& fn) {
  workers = std::max<size_t>(1, std::min(workers, n));
  if (workers == 1) {
    std::exception_ptr first;
    for (size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::mutex mu;
  size_t next = 0;
  auto work = [&] {
    for (;;) {
      size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next == n) return;
        i = next++;
      }
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<DocumentCollection> IngestCorpus(const PipelineConfig& config) {
  return InStage("ingest", [&] {
    std::vector<DocumentCollection> corpus = ParseCorpus(config.corpus);
    std::sort(corpus.begin(), corpus.end(),
              [](const DocumentCollection& a, const DocumentCollection& b) {
                return a.id < b.id;
              });
    if (!config.extractions.empty()) {
      std::vector<Document> docs;
      for (const DocumentCollection& c : corpus) {
        docs.insert(docs.end(), c.documents.begin(), c.documents.end());
      }
      AttachExtractions(LoadExtractions(config.extractions, docs), corpus);
    }
    if (!config.lexicon.empty()) {
      ExtractionLexicon lexicon = LoadLexicon(config.lexicon);
      for (DocumentCollection& c : corpus) {
        for (const Document& d : c.documents) {
          bool tagged = std::any_of(c.mention_events.begin(), c.mention_events.end(),
                                    [&](const MentionEvent& m) { return m.doc_id == d.id; });
          if (tagged) continue;
          std::vector<MentionEvent> found = LexiconExtract(d, lexicon);
          c.mention_events.insert(c.mention_events.end(), found.begin(), found.end());
        }
      }
    }
    for (const DocumentCollection& c : corpus) {
      std::vector<std::string> violations = Validate(c);
      if (!violations.empty()) {
        throw ValidationError("collection \"" + c.id + "\": " + violations.front());
      }
    }
    return corpus;
  });
}

void CorefStage(std::vector<DocumentCollection>& corpus, const PipelineConfig& config) {
  InStage("coref", [&] {
    std::optional<PairScoreTable> external;
    if (!config.coref_scores.empty()) {
      external.emplace(LoadScores(config.coref_scores));
    }
    ParallelFor(corpus.size(), config.workers, [&](size_t i) {
      DocumentCollection& c = corpus[i];
      PairScoreTable scores = external ? *external
                                       : PairScoreTable(ScoreAllPairs(c.mention_events,
                                                                      config.weights));
      c.clusters = Retain(Cluster(c.mention_events, scores, config.coref_threshold),
                          scores, config.coref_threshold);
    });
  });
}

RoleMap NormalizeStage(std::vector<DocumentCollection>& corpus,
                       const PipelineConfig& config) {
  return InStage("normalize", [&] {
    RoleMap roles = LoadRoles(config);
    NormalizationTables tables;
    if (!config.aliases.empty()) tables.aliases = LoadAliasTable(config.aliases);
    if (!config.gazetteer.empty()) tables.gazetteer = LoadAliasTable(config.gazetteer);
    tables.date_order = config.date_order;
    std::vector<std::set<std::string>> added(corpus.size());
    ParallelFor(corpus.size(), config.workers, [&](size_t i) {
      DocumentCollection& c = corpus[i];
      for (MentionEvent& m : c.mention_events) {
        const Document* doc = c.FindDocument(m.doc_id);
        NormalizeMention(m, doc ? std::string_view(doc->text) : std::string_view(),
                         roles, tables, &added[i]);
      }
    });
    for (const auto& roles_added : added) roles.MergeAutoAdded(roles_added);
    return roles;
  });
}

std::vector<ConceptEvent> ResolveStage(const std::vector<DocumentCollection>& corpus,
                                       const PipelineConfig& config) {
  return InStage("resolve", [&] {
    RoleHierarchy hierarchy = LoadHierarchy(config);
    std::vector<std::vector<ConceptEvent>> per_collection(corpus.size());
    ParallelFor(corpus.size(), config.workers, [&](size_t i) {
      const DocumentCollection& c = corpus[i];
      for (const CorefCluster& cl : c.clusters) {
        per_collection[i].push_back(
            MergeCluster(cl, c.mention_events, config.strategy, hierarchy, c.id));
      }
    });
    std::vector<ConceptEvent> events;
    for (auto& batch : per_collection) {
      events.insert(events.end(), std::make_move_iterator(batch.begin()),
                    std::make_move_iterator(batch.end()));
    }
    return events;
  });
}

void RunCorefCommand(const PipelineConfig& config) {
  config.Check();
  std::vector<DocumentCollection> corpus = IngestCorpus(config);
  CorefStage(corpus, config);
  InStage("coref", [&] {
    EnsureOutputDir(config);
    SerializeCorpus(corpus, Artifact(config, kCorefFile));
  });
}

void RunNormalizeCommand(const PipelineConfig& config) {
  config.Check();
  std::vector<DocumentCollection> corpus = InStage("normalize", [&] {
    return ParseCorpus(RequireArtifact(config, kCorefFile, "coref"));
  });
  RoleMap roles = NormalizeStage(corpus, config);
  InStage("normalize", [&] {
    EnsureOutputDir(config);
    SerializeCorpus(corpus, Artifact(config, kNormalizedFile));
    WriteFile(Artifact(config, kAddedRolesFile), SerializeAutoAddedRoles(roles));
  });
}

void RunResolveCommand(const PipelineConfig& config) {
  config.Check();
  std::vector<DocumentCollection> corpus = InStage("resolve", [&] {
    return ParseCorpus(RequireArtifact(config, kNormalizedFile, "normalize"));
  });
  std::vector<ConceptEvent> events = ResolveStage(corpus, config);
  InStage("resolve", [&] {
    EnsureOutputDir(config);
    WriteConceptEvents(events, Artifact(config, kConceptEventsFile));
  });
}

bool RunEvalCommand(const PipelineConfig& config) {
  config.Check();
  return InStage("eval", [&] {
    std::vector<ConceptEvent> pred =
        ReadConceptEvents(RequireArtifact(config, kConceptEventsFile, "resolve"));
    std::vector<ConceptEvent> gold;
    for (const DocumentCollection& c : ParseCorpus(config.corpus)) {
      gold.insert(gold.end(), c.gold_concept_events.begin(), c.gold_concept_events.end());
    }
    if (gold.empty()) return false;
    EvalReport report = Evaluate(gold, pred, config.relaxed_eval);
    EnsureOutputDir(config);
    WriteFile(Artifact(config, kEvalJsonFile), EvalReportJson(report));
    WriteFile(Artifact(config, kEvalTableFile), EvalReportTable(report));
    return true;
  });
}

bool RunPipeline(const PipelineConfig& config) {
  RunCorefCommand(config);
  RunNormalizeCommand(config);
  RunResolveCommand(config);
  return RunEvalCommand(config);
}

std::vector<EdagSummary> SummarizeEdags(const std::vector<ConceptEvent>& events,
                                        const std::map<EventType, RoleOrder>& orders) {
  std::map<EventType, std::vector<EventRecord>> records;
  std::map<EventType, size_t> skipped;
  for (const ConceptEvent& e : events) {
    auto order = orders.find(e.event_type);
    EventRecord record;
    for (const Argument& a : e.arguments) {
      std::string role = a.canonical_role ? *a.canonical_role : FoldKey(a.role);
      std::string entity = a.canonical_entity ? *a.canonical_entity
                                              : FoldKey(a.entity_surface);
      bool known = order != orders.end() &&
                   std::find(order->second.ordered_roles.begin(),
                             order->second.ordered_roles.end(),
                             role) != order->second.ordered_roles.end();
      if (!known) {
        ++skipped[e.event_type];
        continue;
      }
      auto [it, inserted] = record.emplace(role, entity);
      if (!inserted && entity < it->second) it->second = entity;
    }
    records[e.event_type].push_back(std::move(record));
  }
  std::vector<EdagSummary> out;
  for (auto& [type, recs] : records) {
    EdagSummary s;
    s.type = type;
    s.records = recs.size();
    s.skipped_roles = skipped[type];
    auto order = orders.find(type);
    if (order != orders.end()) {
      Edag edag = BuildEdag(RecordsToChains(recs, order->second), order->second);
      s.nodes = edag.size();
      s.paths = ExpandPaths(edag, order->second);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string EdagSummaryJson(const std::vector<EdagSummary>& summaries) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const EdagSummary& s : summaries) {
    nlohmann::ordered_json item;
    item["event_type"] = EventTypeName(s.type);
    item["records"] = s.records;
    item["nodes"] = s.nodes;
    item["skipped_roles"] = s.skipped_roles;
    nlohmann::ordered_json paths = nlohmann::ordered_json::array();
    for (const EventRecord& r : s.paths) {
      nlohmann::ordered_json path = nlohmann::ordered_json::object();
      for (const auto& [role, entity] : r) path[role] = entity;
      paths.push_back(std::move(path));
    }
    item["paths"] = std::move(paths);
    j.push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

}  // namespace cdee

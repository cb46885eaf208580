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

// Command-line front end: the full pipeline plus one subcommand per stage.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cdee/collections.h"
#include "cdee/corpus.h"
#include "cdee/edag.h"
#include "cdee/metrics.h"
#include "cdee/pipeline.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitError = 1;
constexpr int kExitValidation = 2;

// Flags shared by the pipeline subcommands; each overrides the config file.
struct PipelineFlags {
  std::string config;
  std::optional<double> threshold;
  std::optional<std::string> strategy;
  std::optional<std::string> date_order;
  std::optional<size_t> workers;
  std::optional<std::string> output_dir;
  bool relaxed = false;

  void Register(CLI::App* cmd) {
    cmd->add_option("--config", config, "pipeline config file")->required();
    cmd->add_option("--coref-threshold", threshold, "retain pairs scoring above this");
    cmd->add_option("--strategy", strategy, "role conflict strategy")
        ->check(CLI::IsMember({"hierarchy", "max-count"}));
    cmd->add_option("--date-order", date_order, "order of numeric dates")
        ->check(CLI::IsMember({"mdy", "dmy"}));
    cmd->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--output-dir", output_dir, "directory for stage outputs");
    cmd->add_flag("--relaxed-eval", relaxed, "accept predicted entities inside gold ones");
  }

  cdee::PipelineConfig Load() const {
    cdee::PipelineConfig c = cdee::LoadPipelineConfig(config);
    if (threshold) c.coref_threshold = *threshold;
    if (strategy) c.strategy = *cdee::ParseMergeStrategy(*strategy);
    if (date_order) c.date_order = *cdee::ParseDateOrder(*date_order);
    if (workers) c.workers = *workers;
    if (output_dir) c.output_dir = *output_dir;
    if (relaxed) c.relaxed_eval = true;
    c.Check();
    return c;
  }
};

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    cdee::WriteFile(path, text);
  }
}

void PrintEvalLocation(const cdee::PipelineConfig& config, bool written) {
  if (written) {
    std::cout << cdee::ReadFile(config.output_dir / cdee::kEvalTableFile);
  } else {
    std::cout << "no gold concept events; evaluation skipped\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-document event extraction pipeline"};
  app.require_subcommand(1);

  PipelineFlags run_flags, coref_flags, normalize_flags, resolve_flags, eval_flags;
  CLI::App* run = app.add_subcommand("run", "run every stage");
  run_flags.Register(run);
  CLI::App* coref = app.add_subcommand("coref", "ingest, cluster and retain mentions");
  coref_flags.Register(coref);
  CLI::App* normalize = app.add_subcommand("normalize", "link entities and map roles");
  normalize_flags.Register(normalize);
  CLI::App* resolve = app.add_subcommand("resolve", "merge clusters into concept events");
  resolve_flags.Register(resolve);

  CLI::App* eval = app.add_subcommand("eval", "score concept events or clusterings");
  std::string eval_config, pred_path, gold_path, key_path, response_path, eval_out;
  bool eval_relaxed = false;
  eval->add_option("--config", eval_config, "score the pipeline output of this config");
  eval->add_option("--pred", pred_path, "predicted concept events");
  eval->add_option("--gold", gold_path, "gold concept events or a corpus with gold");
  eval->add_option("--key", key_path, "gold cluster file");
  eval->add_option("--response", response_path, "system cluster file");
  eval->add_flag("--relaxed-eval", eval_relaxed, "accept predicted entities inside gold ones");
  eval->add_option("--output", eval_out, "write the JSON report here");
  std::optional<std::string> eval_output_dir;
  eval->add_option("--output-dir", eval_output_dir,
                   "with --config: directory holding the stage outputs");

  CLI::App* stats = app.add_subcommand("stats", "corpus statistics");
  std::string stats_corpus, stats_out;
  size_t top_k = 10;
  bool stats_json = false;
  stats->add_option("--corpus", stats_corpus, "corpus file")->required();
  stats->add_option("--top-k", top_k, "rows in frequency tables");
  stats->add_flag("--json", stats_json, "print JSON instead of tables");
  stats->add_option("--output", stats_out, "write the report here");

  CLI::App* build = app.add_subcommand("build-collections",
                                       "group documents by anchor target");
  std::string build_in, build_out;
  size_t limit = cdee::kMaxCollectionSize;
  build->add_option("--corpus", build_in, "corpus whose documents are regrouped")->required();
  build->add_option("--output", build_out, "output corpus file")->required();
  build->add_option("--limit", limit, "maximum documents per collection")
      ->check(CLI::PositiveNumber);

  CLI::App* edag = app.add_subcommand("edag", "encode concept events as argument chains");
  std::string edag_events, edag_orders, edag_out;
  edag->add_option("--events", edag_events, "concept event file")->required();
  edag->add_option("--role-orders", edag_orders, "role order table")->required();
  edag->add_option("--output", edag_out, "write the summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every usage error is invalid input.
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (run->parsed()) {
      cdee::PipelineConfig config = run_flags.Load();
      PrintEvalLocation(config, cdee::RunPipeline(config));
    } else if (coref->parsed()) {
      cdee::RunCorefCommand(coref_flags.Load());
    } else if (normalize->parsed()) {
      cdee::RunNormalizeCommand(normalize_flags.Load());
    } else if (resolve->parsed()) {
      cdee::RunResolveCommand(resolve_flags.Load());
    } else if (eval->parsed()) {
      if (!eval_config.empty()) {
        eval_flags.config = eval_config;
        eval_flags.relaxed = eval_relaxed;
        eval_flags.output_dir = eval_output_dir;
        cdee::PipelineConfig config = eval_flags.Load();
        PrintEvalLocation(config, cdee::RunEvalCommand(config));
      } else if (!key_path.empty() || !response_path.empty()) {
        if (key_path.empty() || response_path.empty()) {
          throw cdee::ValidationError("eval: --key and --response go together");
        }
        cdee::Partition key = cdee::ParseClusterText(cdee::ReadFile(key_path));
        cdee::Partition response = cdee::ParseClusterText(cdee::ReadFile(response_path));
        cdee::EvalReport report;
        report.coreference = cdee::ScoreCoreference(key, response);
        Emit(cdee::EvalReportJson(report), eval_out);
      } else {
        if (pred_path.empty() || gold_path.empty()) {
          throw cdee::ValidationError(
              "eval: give --config, --pred with --gold, or --key with --response");
        }
        cdee::EvalReport report =
            cdee::Evaluate(cdee::ReadConceptEvents(gold_path),
                           cdee::ReadConceptEvents(pred_path), eval_relaxed);
        Emit(cdee::EvalReportJson(report), eval_out);
        if (!eval_out.empty()) std::cout << cdee::EvalReportTable(report);
      }
    } else if (stats->parsed()) {
      cdee::CorpusStats s = cdee::ComputeStats(cdee::ParseCorpus(stats_corpus));
      Emit(stats_json ? cdee::CorpusStatsJson(s, top_k) : cdee::CorpusStatsTable(s, top_k),
           stats_out);
    } else if (build->parsed()) {
      std::vector<cdee::Document> docs;
      std::vector<cdee::MentionEvent> mentions;
      for (const cdee::DocumentCollection& c : cdee::ParseCorpus(build_in)) {
        docs.insert(docs.end(), c.documents.begin(), c.documents.end());
        mentions.insert(mentions.end(), c.mention_events.begin(), c.mention_events.end());
      }
      std::vector<cdee::DocumentCollection> built = cdee::BuildCollections(docs, mentions);
      for (cdee::DocumentCollection& c : built) c = cdee::CapCollection(c, limit);
      cdee::SerializeCorpus(built, build_out);
      std::cout << built.size() << " collections written to " << build_out << "\n";
    } else if (edag->parsed()) {
      auto summaries = cdee::SummarizeEdags(cdee::ReadConceptEvents(edag_events),
                                            cdee::LoadRoleOrders(edag_orders));
      Emit(cdee::EdagSummaryJson(summaries), edag_out);
    }
  } catch (const cdee::ValidationError& e) {
    std::cerr << "cdee: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "cdee: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}

// Copyright 2026 The Authors.
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

#include "opsum/cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "httplib.h"
#include "opsum/engine.h"
#include "opsum/evaluation.h"
#include "opsum/service.h"
#include "opsum/summarizer.h"

namespace opsum {
namespace {

std::string EnvOr(const char* name, std::string fallback) {
  const char* value = std::getenv(name);
  return value != nullptr && *value != '\0' ? std::string(value) : fallback;
}

struct CommonOptions {
  std::string data_dir = EnvOr("OPSUM_DATA_DIR", "opsum-data");
  std::string resource_dir = EnvOr("OPSUM_RESOURCE_DIR", OPSUM_RESOURCE_DIR);
  std::string vectors;

  void AddTo(CLI::App* app) {
    app->add_option("--data-dir", data_dir,
                    "Directory holding places/*.corpus and vectors.txt");
    app->add_option("--resources", resource_dir,
                    "Directory with stopwords, lexicon and aspect catalog");
    app->add_option("--vectors", vectors, "Word vector file to use");
  }

  EngineOptions Engine() const {
    EngineOptions options;
    options.data_dir = data_dir;
    options.resource_dir = resource_dir;
    if (!vectors.empty()) options.vectors = vectors;
    return options;
  }
};

int ReportStatus(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << "\n";
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
      return kExitUsage;
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kDataLoss:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kPermissionDenied:
      return kExitData;
    default:
      return kExitInternal;
  }
}

int RunIngest(const CommonOptions& common, const std::string& file,
              const std::string& place, std::string format, bool strict,
              std::ostream& out, std::ostream& err) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << "error: cannot open " << file << "\n";
    return kExitData;
  }
  if (format.empty()) {
    format = absl::EndsWithIgnoreCase(file, ".csv") ? "csv" : "jsonl";
  }
  IngestResult result = format == "csv" ? IngestCsv(in, place)
                                        : IngestJsonLines(in, place);
  for (const RecordError& e : result.errors) {
    err << file << ":" << e.line << ": " << e.message << "\n";
  }
  if (result.other_place_records > 0) {
    out << "skipped " << result.other_place_records
        << " record(s) for other places\n";
  }

  std::map<std::string, std::vector<Review>> by_place;
  int unplaced = 0;
  for (Review& review : result.reviews) {
    if (review.place.empty()) {
      ++unplaced;
      continue;
    }
    by_place[review.place].push_back(std::move(review));
  }
  if (unplaced > 0) {
    err << file << ": " << unplaced
        << " record(s) have no place field; pass --place\n";
  }

  absl::StatusOr<TextResources> text = TextResources::Load(
      std::filesystem::path(common.resource_dir) / "stopwords.txt",
      std::filesystem::path(common.resource_dir) / "abbreviations.txt");
  if (!text.ok()) return ReportStatus(text.status(), err);

  for (const auto& [id, reviews] : by_place) {
    const std::filesystem::path path = PlaceIndexPath(common.data_dir, id);
    if (absl::Status s = WritePlaceIndex(path, reviews); !s.ok()) {
      return ReportStatus(s, err);
    }
    PlaceCorpus corpus(id, reviews, *text);
    const CorpusStats& stats = corpus.stats();
    out << "ingested " << stats.review_count << " review(s) for '" << id
        << "': " << stats.female_count << " female, " << stats.male_count
        << " male, " << stats.unknown_count << " unknown; "
        << stats.sentence_count << " sentence(s) -> " << path.string()
        << "\n";
    for (const std::string& skipped : corpus.skipped_reviews()) {
      err << "warning: review '" << skipped
          << "' has no sentence and was skipped\n";
    }
  }
  if (!result.errors.empty() || unplaced > 0) {
    out << result.errors.size() + unplaced << " record(s) rejected\n";
    if (strict || by_place.empty()) return kExitData;
  }
  return kExitOk;
}

int RunSummarize(const CommonOptions& common, ControlParams controls,
                 const std::string& aspects, const std::string& format,
                 std::ostream& out, std::ostream& err) {
  controls.aspects = AspectRequest::Parse(aspects);
  if (std::vector<FieldError> errors = ValidateControls(controls);
      !errors.empty()) {
    for (const FieldError& e : errors) {
      err << "error: " << e.field << ": " << e.message << "\n";
    }
    return kExitUsage;
  }
  if (controls.place.empty()) {
    err << "error: --place is required\n";
    return kExitUsage;
  }
  absl::StatusOr<std::unique_ptr<const Engine>> engine =
      Engine::Load(common.Engine());
  if (!engine.ok()) return ReportStatus(engine.status(), err);
  if (absl::StatusOr<std::vector<AspectClass>> resolved =
          ResolveSelection((*engine)->catalog(), controls.aspects);
      !resolved.ok()) {
    return ReportStatus(resolved.status(), err);
  }
  if ((*engine)->corpus().Find(controls.place) == nullptr) {
    err << "error: unknown place '" << controls.place << "'\n";
    return kExitData;
  }
  absl::StatusOr<Summary> summary =
      (*engine)->summarizer().Summarize(controls);
  if (!summary.ok()) {
    err << "error: " << summary.status().message() << "\n";
    return kExitInternal;
  }
  out << (format == "text" ? RenderSummaryText(*summary)
                           : SerializeSummary(*summary));
  return kExitOk;
}

int RunEval(const CommonOptions& common, bool ablation,
            const std::string& places_flag, ControlParams base,
            const std::string& output, bool json, std::ostream& out,
            std::ostream& err) {
  if (!ablation) {
    err << "error: eval currently requires --ablation\n";
    return kExitUsage;
  }
  if (std::vector<FieldError> errors = ValidateControls(base);
      !errors.empty()) {
    for (const FieldError& e : errors) {
      err << "error: " << e.field << ": " << e.message << "\n";
    }
    return kExitUsage;
  }
  absl::StatusOr<std::unique_ptr<const Engine>> engine =
      Engine::Load(common.Engine());
  if (!engine.ok()) return ReportStatus(engine.status(), err);
  std::vector<std::string> places =
      places_flag.empty()
          ? (*engine)->corpus().Places()
          : std::vector<std::string>(absl::StrSplit(places_flag, ',',
                                                    absl::SkipWhitespace()));
  if (places.empty()) {
    err << "error: no places ingested under " << common.data_dir << "\n";
    return kExitData;
  }
  AblationReport report = RunAblation((*engine)->summarizer(), places,
                                      StandardAblationGrid(), base);
  const std::string report_json = AblationReportToJson(report).dump(2) + "\n";
  if (!output.empty()) {
    std::ofstream file(output, std::ios::trunc);
    file << report_json;
    if (!file) {
      err << "error: cannot write " << output << "\n";
      return kExitData;
    }
  }
  out << (json ? report_json : RenderAblationTable(report));
  for (const RougeReport& row : report.rows) {
    for (const AblationCell& cell : row.per_place) {
      if (!cell.scores) {
        err << "cell (" << row.config.name << ", " << cell.place
            << ") failed: " << cell.error << "\n";
      }
    }
  }
  return report.complete() ? kExitOk : kExitData;
}

int RunServe(const CommonOptions& common, const std::string& host, int port,
             std::ostream& out, std::ostream& err) {
  httplib::Server server;
  ApiService service;
  service.Register(server);
  const EngineOptions options = common.Engine();
  std::thread loader([&] {
    absl::StatusOr<std::unique_ptr<const Engine>> engine =
        Engine::Load(options);
    if (!engine.ok()) {
      err << "error: " << engine.status().message() << "\n";
      server.stop();
      return;
    }
    service.SetEngine(std::shared_ptr<const Engine>(*std::move(engine)));
    out << "ready: serving /api/v1 on " << host << ":" << port << std::endl;
  });
  const bool listened = server.listen(host, port);
  loader.join();
  if (!listened) {
    err << "error: cannot listen on " << host << ":" << port << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Controllable aspect-based extractive summaries of reviews",
               "opsum");
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  CommonOptions common;

  std::string ingest_file;
  std::string ingest_place;
  std::string ingest_format;
  bool ingest_strict = false;
  CLI::App* ingest = app.add_subcommand("ingest", "Ingest reviews for a place");
  ingest->add_option("file", ingest_file, "JSON Lines or CSV review file")
      ->required();
  ingest->add_option("--place", ingest_place,
                     "Place id; defaults to each record's place field");
  ingest->add_option("--format", ingest_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  ingest->add_flag("--strict", ingest_strict,
                   "Exit with status 2 when any record is rejected");
  common.AddTo(ingest);

  ControlParams controls;
  std::string aspects = "all";
  std::string format = "json";
  CLI::App* summarize =
      app.add_subcommand("summarize", "Summarize one place");
  summarize->add_option("--place", controls.place, "Place id");
  summarize->add_option("--aspects", aspects,
                        "Comma-separated aspect labels or 'all'");
  summarize->add_option("--length", controls.length_words,
                        "Length budget in words");
  summarize->add_option("--female-ratio", controls.female_ratio,
                        "Desired share of opinions by women, in [0,1]");
  summarize->add_option("--lambda", controls.penalty_weight,
                        "Redundancy penalty weight");
  summarize->add_option("--candidate-pool", controls.candidate_pool,
                        "Top-scoring sentences kept for selection");
  summarize->add_option("--exact-limit", controls.solver.exact_limit,
                        "Largest pool solved exactly");
  summarize->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  common.AddTo(summarize);

  bool ablation = false;
  bool eval_json = false;
  std::string eval_places;
  std::string eval_output;
  ControlParams eval_base;
  CLI::App* eval = app.add_subcommand("eval", "ROUGE evaluation");
  eval->add_flag("--ablation", ablation, "Run the seven-row ablation grid");
  eval->add_option("--places", eval_places, "Comma-separated place ids");
  eval->add_option("--output", eval_output, "Write the JSON report here");
  eval->add_flag("--json", eval_json, "Print JSON instead of the table");
  eval->add_option("--length", eval_base.length_words, "Length budget");
  eval->add_option("--female-ratio", eval_base.female_ratio,
                   "Desired share of opinions by women");
  common.AddTo(eval);

  std::string host = "0.0.0.0";
  int port = 8080;
  {
    const std::string env_port = EnvOr("OPSUM_PORT", "");
    if (!env_port.empty()) port = std::atoi(env_port.c_str());
  }
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Port (env OPSUM_PORT)");
  serve->add_option("--host", host, "Bind address");
  common.AddTo(serve);

  if (args.empty()) {
    err << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*ingest) {
      return RunIngest(common, ingest_file, ingest_place, ingest_format,
                       ingest_strict, out, err);
    }
    if (*summarize) {
      return RunSummarize(common, controls, aspects, format, out, err);
    }
    if (*eval) {
      return RunEval(common, ablation, eval_places, eval_base, eval_output,
                     eval_json, out, err);
    }
    if (*serve) return RunServe(common, host, port, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace opsum

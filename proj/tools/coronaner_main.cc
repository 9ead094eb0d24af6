// Copyright 2026 The coronaner Authors.
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

// Command-line front end: annotate, fetch-seeds, evaluate, stats, agreement.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coronaner/error.h"
#include "coronaner/evaluation.h"
#include "coronaner/pipeline.h"

namespace coronaner {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void PrintWarnings(const std::vector<std::string> &warnings) {
  for (const auto &warning : warnings) {
    std::cerr << "warning: " << warning << '\n';
  }
}

int Main(int argc, char **argv) {
  CLI::App app{"Distantly supervised COVID-19 news NER annotation"};
  app.require_subcommand(1);

  std::string config_path;
  bool strict = false;
  bool case_sensitive = false;
  bool pos_filter = false;
  int workers = 0;
  auto *annotate = app.add_subcommand("annotate", "Annotate a JSONL corpus");
  annotate->add_option("--config", config_path, "Pipeline configuration")
      ->required();
  annotate->add_flag("--strict", strict, "Reject invalid records");
  annotate->add_flag("--case-sensitive", case_sensitive,
                     "Match seeds without case folding");
  annotate->add_flag("--pos-filter", pos_filter,
                     "Keep only noun-headed seed matches");
  annotate->add_option("--workers", workers, "Worker threads")
      ->check(CLI::Range(1, 256));

  auto *fetch = app.add_subcommand("fetch-seeds", "Fetch silver seeds");
  fetch->add_option("--config", config_path, "Pipeline configuration")
      ->required();

  std::string gold_path;
  std::string pred_path;
  std::string json_path;
  bool lenient = false;
  auto *evaluate = app.add_subcommand("evaluate", "Entity-level scores");
  evaluate->add_option("--gold", gold_path, "Gold CoNLL file")->required();
  evaluate->add_option("--pred", pred_path, "Predicted CoNLL file")
      ->required();
  evaluate->add_option("--json", json_path, "Write a JSON report");
  evaluate->add_flag("--lenient", lenient, "Repair invalid BIO sequences");

  std::string input_path;
  auto *stats = app.add_subcommand("stats", "Entity counts per type");
  stats->add_option("--input", input_path, "CoNLL or annotated JSONL file")
      ->required();

  std::vector<std::string> rater_paths;
  auto *agreement =
      app.add_subcommand("agreement", "Token-level Fleiss kappa");
  agreement->add_option("--rater", rater_paths, "CoNLL file of one rater")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*annotate) {
      PipelineConfig config = LoadPipelineConfig(config_path);
      if (strict) config.strict = true;
      if (case_sensitive) config.case_sensitive = true;
      if (pos_filter) config.pos_filter = true;
      if (workers > 0) config.workers = workers;
      AnnotateResult result = RunAnnotate(config);
      PrintWarnings(result.summary.warnings);
      std::cout << SummaryToJson(result.summary);
    } else if (*fetch) {
      FetchSummary summary = RunFetchSeeds(LoadPipelineConfig(config_path));
      PrintWarnings(summary.warnings);
      std::cout << "entries: " << summary.entries << "\nrows: " << summary.rows
                << "\nnetwork requests: " << summary.network_requests << '\n';
    } else if (*evaluate) {
      EvalReport report = RunEvaluate(gold_path, pred_path, json_path, lenient);
      std::cout << RenderReport(report);
    } else if (*stats) {
      std::cout << CorpusStatsToJson(RunStats(input_path));
    } else if (*agreement) {
      std::cout << "fleiss_kappa: " << RunAgreement(rater_paths) << '\n';
    }
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace
}  // namespace coronaner

int main(int argc, char **argv) { return coronaner::Main(argc, argv); }

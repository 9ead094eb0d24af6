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

// End-to-end annotation pipeline:
//
//   clean -> segment -> tokenize -> (health pass | generic pass)
//         -> harmonize -> CoNLL + annotated JSONL + stats
//
// driven by a JSON configuration file. Relative paths in the file are
// resolved against the directory containing it. The environment variable
// CORONANER_KB_ENDPOINT overrides both knowledge-base endpoints.

#ifndef CORONANER_PIPELINE_H_
#define CORONANER_PIPELINE_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coronaner/evaluation.h"
#include "coronaner/generic_annotation.h"
#include "coronaner/harmonizer.h"
#include "coronaner/seed_store.h"
#include "coronaner/sparql.h"
#include "coronaner/text.h"

namespace coronaner {

inline constexpr const char *kKbEndpointEnv = "CORONANER_KB_ENDPOINT";

struct KbSettings {
  std::string endpoint;
  std::string cache_path;
  int timeout_seconds = 60;
  // Never touch the network; cache misses are errors.
  bool offline = false;
};

struct SilverFetchSettings {
  KbSettings kb;
  std::map<std::string, std::string> queries;  // entity type -> SPARQL
  size_t max_rows = 10000;
  std::string output_path;  // TSV written by fetch-seeds
};

struct PipelineConfig {
  std::string config_path;
  std::string input_path;
  std::string gold_seed_path;
  std::string silver_seed_path;  // optional
  std::optional<SilverFetchSettings> silver_fetch;
  std::string generic_spans_path;  // optional
  std::string refinement_rules_path;  // optional
  std::optional<KbSettings> refinement_kb;
  std::string refinement_query_template;
  std::string pos_path;  // optional JSONL {"sent_id", "pos": [...]}
  HarmonizationPolicy policy;
  TextOptions text;

  std::string conll_output;
  std::string jsonl_output;
  std::string stats_output;
  std::string refinement_log_output;  // optional

  bool strict = false;  // lenient import and BIO repair unless set
  bool case_sensitive = false;
  bool pos_filter = false;
  int workers = 1;
};

// Parses the configuration file. Throws ConfigError for unknown keys, bad
// values or a missing file.
PipelineConfig LoadPipelineConfig(const std::string &path);
PipelineConfig ParsePipelineConfig(const std::string &json_text,
                                   const std::string &base_dir);

// Checks that every referenced input exists and the settings are
// consistent for `annotate` (or `fetch-seeds` when for_fetch is set).
// Throws ConfigError naming the offending path or key.
void ValidateConfig(const PipelineConfig &config, bool for_fetch = false);

struct AnnotateSummary {
  size_t documents = 0;
  size_t sentences = 0;
  size_t tokens = 0;
  size_t gold_seeds = 0;
  size_t silver_seeds = 0;
  size_t lexicon_entries = 0;
  size_t seed_conflicts = 0;
  size_t health_spans = 0;
  size_t generic_imported = 0;
  size_t generic_skipped = 0;
  size_t generic_retyped = 0;
  size_t generic_overlaps_resolved = 0;
  size_t generic_dropped = 0;
  CorpusStats entities;
  std::vector<std::string> warnings;
};

struct AnnotateResult {
  std::vector<Sentence> sentences;
  SentenceSpans health;
  SentenceSpans generic;
  SentenceSpans spans;  // harmonized
  std::vector<RefinementDecision> decisions;
  AnnotateSummary summary;
};

// Runs the pipeline without writing outputs. The transport is used for
// knowledge-base cache misses; null means the default HTTP transport
// (unless the settings are offline).
AnnotateResult Annotate(const PipelineConfig &config,
                        std::shared_ptr<SparqlTransport> transport = nullptr);

// Annotate, then write CoNLL, annotated JSONL, stats JSON and the optional
// refinement log. Outputs appear together or not at all.
AnnotateResult RunAnnotate(const PipelineConfig &config,
                           std::shared_ptr<SparqlTransport> transport = nullptr);

std::string SummaryToJson(const AnnotateSummary &summary);

struct FetchSummary {
  size_t entries = 0;
  size_t rows = 0;
  size_t network_requests = 0;
  std::vector<std::string> warnings;
};

// Fetches silver seeds per the silver_fetch settings and writes them as
// seed TSV.
FetchSummary RunFetchSeeds(const PipelineConfig &config,
                           std::shared_ptr<SparqlTransport> transport = nullptr);

// Scores a predicted CoNLL file against a gold one. Sentence count or token
// mismatches raise ConfigError naming the file and line. Writes the JSON
// report when json_path is nonempty.
EvalReport RunEvaluate(const std::string &gold_path,
                       const std::string &pred_path,
                       const std::string &json_path = {},
                       bool lenient = false);

// Entity counts of an annotated JSONL (".jsonl") or CoNLL file.
CorpusStats RunStats(const std::string &path);

// Fleiss' kappa over token labels of two or more CoNLL annotations of the
// same sentences.
double RunAgreement(const std::vector<std::string> &rater_paths);

}  // namespace coronaner

#endif  // CORONANER_PIPELINE_H_

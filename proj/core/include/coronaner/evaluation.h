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

// Entity-level scoring, inter-annotator agreement and run aggregation.

#ifndef CORONANER_EVALUATION_H_
#define CORONANER_EVALUATION_H_

#include <map>
#include <string>
#include <vector>

#include "coronaner/corpus_io.h"
#include "coronaner/span.h"

namespace coronaner {

// Spans keyed by sentence id.
using SpansById = std::map<std::string, std::vector<EntitySpan>>;

struct Scores {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Fills precision/recall/f1 from the counts; every 0/0 is 0.
Scores ScoresFromCounts(size_t tp, size_t fp, size_t fn);

struct EvalReport {
  std::map<std::string, Scores> per_type;
  Scores micro;
  std::map<std::string, size_t> support;  // gold spans per type
  size_t n_sentences = 0;
};

// Strict span scoring: a prediction is a true positive iff a so-far
// unmatched gold span has the same (start, end, type). Micro scores come
// from counts summed over types. Throws ConfigError listing the differing
// ids if gold and pred cover different sentences.
EvalReport EntityF1(const SpansById &gold, const SpansById &pred);

// Human-readable table.
std::string RenderReport(const EvalReport &report);

// JSON with per_type, micro, support, n_sentences and the given config
// echo.
std::string ReportToJson(const EvalReport &report,
                         const std::map<std::string, std::string> &config = {});

// N items x K categories; every row sums to the number of raters.
struct AgreementTable {
  std::vector<std::vector<int>> counts;
};

// Fleiss' kappa, (P_bar - P_e) / (1 - P_e). Returns 1.0 when every rating
// falls into a single category. Throws Error on empty or ragged tables,
// negative counts, row sums that differ or are below 2.
double FleissKappa(const AgreementTable &table);

// Token-level agreement table over BIO labels: raters[r] is rater r's
// annotation of the same sentences. Categories are the labels observed.
// Throws ConfigError if raters disagree on sentence count or tokens.
AgreementTable TokenAgreementTable(
    const std::vector<std::vector<LabeledSentence>> &raters);

struct RunAggregate {
  std::vector<double> scores;
  double mean = 0.0;
  double std = 0.0;
};

// Mean and standard deviation (n - 1 denominator when `sample`, else n)
// of repeated-run scores. A single score has std 0. Throws on empty input.
RunAggregate AggregateRuns(const std::vector<double> &scores,
                           bool sample = true);

struct CorpusStats {
  std::map<std::string, size_t> per_type;
  size_t total_entities = 0;
  size_t total_sentences = 0;
};

CorpusStats ComputeCorpusStats(const SentenceSpans &spans);
CorpusStats ComputeCorpusStats(const std::vector<AnnotatedSentence> &corpus);

std::string CorpusStatsToJson(const CorpusStats &stats);

}  // namespace coronaner

#endif  // CORONANER_EVALUATION_H_

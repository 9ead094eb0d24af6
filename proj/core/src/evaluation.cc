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

#include "coronaner/evaluation.h"

#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

#include "coronaner/error.h"
#include "json.hpp"

namespace coronaner {

using nlohmann::ordered_json;

namespace {

double Ratio(size_t numerator, size_t denominator) {
  return denominator == 0 ? 0.0
                          : static_cast<double>(numerator) / denominator;
}

ordered_json ScoresToJson(const Scores &scores) {
  ordered_json out;
  out["tp"] = scores.tp;
  out["fp"] = scores.fp;
  out["fn"] = scores.fn;
  out["precision"] = scores.precision;
  out["recall"] = scores.recall;
  out["f1"] = scores.f1;
  return out;
}

std::string ListIds(const std::vector<std::string> &ids) {
  std::string out;
  for (size_t i = 0; i < ids.size() && i < 10; ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  if (ids.size() > 10) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

Scores ScoresFromCounts(size_t tp, size_t fp, size_t fn) {
  Scores scores;
  scores.tp = tp;
  scores.fp = fp;
  scores.fn = fn;
  scores.precision = Ratio(tp, tp + fp);
  scores.recall = Ratio(tp, tp + fn);
  double sum = scores.precision + scores.recall;
  scores.f1 = sum == 0.0 ? 0.0 : 2.0 * scores.precision * scores.recall / sum;
  return scores;
}

EvalReport EntityF1(const SpansById &gold, const SpansById &pred) {
  std::vector<std::string> only_gold;
  std::vector<std::string> only_pred;
  for (const auto &[id, spans] : gold) {
    if (!pred.count(id)) only_gold.push_back(id);
  }
  for (const auto &[id, spans] : pred) {
    if (!gold.count(id)) only_pred.push_back(id);
  }
  if (!only_gold.empty() || !only_pred.empty()) {
    std::string message = "gold and pred cover different sentences";
    if (!only_gold.empty()) message += "; only in gold: " + ListIds(only_gold);
    if (!only_pred.empty()) message += "; only in pred: " + ListIds(only_pred);
    throw ConfigError(message);
  }

  struct Counts {
    size_t tp = 0, fp = 0, fn = 0;
  };
  std::map<std::string, Counts> counts;
  EvalReport report;
  report.n_sentences = gold.size();

  using Key = std::tuple<size_t, size_t, std::string>;
  for (const auto &[id, gold_spans] : gold) {
    std::multiset<Key> unmatched;
    for (const EntitySpan &span : gold_spans) {
      unmatched.emplace(span.start, span.end, span.type);
      ++report.support[span.type];
    }
    for (const EntitySpan &span : pred.at(id)) {
      auto it = unmatched.find(Key{span.start, span.end, span.type});
      if (it != unmatched.end()) {
        ++counts[span.type].tp;
        unmatched.erase(it);
      } else {
        ++counts[span.type].fp;
      }
    }
    for (const Key &key : unmatched) ++counts[std::get<2>(key)].fn;
  }

  Counts total;
  for (const auto &[type, c] : counts) {
    report.per_type[type] = ScoresFromCounts(c.tp, c.fp, c.fn);
    total.tp += c.tp;
    total.fp += c.fp;
    total.fn += c.fn;
  }
  report.micro = ScoresFromCounts(total.tp, total.fp, total.fn);
  return report;
}

std::string RenderReport(const EvalReport &report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << std::left << std::setw(22) << "type" << std::right << std::setw(8)
      << "tp" << std::setw(8) << "fp" << std::setw(8) << "fn" << std::setw(10)
      << "prec" << std::setw(10) << "recall" << std::setw(10) << "f1"
      << std::setw(9) << "support" << '\n';
  auto row = [&](const std::string &name, const Scores &s, size_t support) {
    out << std::left << std::setw(22) << name << std::right << std::setw(8)
        << s.tp << std::setw(8) << s.fp << std::setw(8) << s.fn
        << std::setw(10) << s.precision << std::setw(10) << s.recall
        << std::setw(10) << s.f1 << std::setw(9) << support << '\n';
  };
  size_t total_support = 0;
  for (const auto &[type, scores] : report.per_type) {
    auto it = report.support.find(type);
    size_t support = it == report.support.end() ? 0 : it->second;
    total_support += support;
    row(type, scores, support);
  }
  row("micro", report.micro, total_support);
  out << "sentences: " << report.n_sentences << '\n';
  return out.str();
}

std::string ReportToJson(const EvalReport &report,
                         const std::map<std::string, std::string> &config) {
  ordered_json out;
  out["per_type"] = ordered_json::object();
  for (const auto &[type, scores] : report.per_type) {
    out["per_type"][type] = ScoresToJson(scores);
  }
  out["micro"] = ScoresToJson(report.micro);
  out["support"] = ordered_json::object();
  for (const auto &[type, count] : report.support) out["support"][type] = count;
  out["n_sentences"] = report.n_sentences;
  out["config"] = ordered_json::object();
  for (const auto &[key, value] : config) out["config"][key] = value;
  return out.dump(2) + "\n";
}

double FleissKappa(const AgreementTable &table) {
  const auto &counts = table.counts;
  if (counts.empty()) throw Error("agreement table has no items");
  const size_t categories = counts.front().size();
  if (categories == 0) throw Error("agreement table has no categories");

  long long raters = -1;
  std::vector<double> category_totals(categories, 0.0);
  double agreement_sum = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i].size() != categories) {
      throw Error("agreement table row " + std::to_string(i) +
                  " has a different number of categories");
    }
    long long row_sum = 0;
    double squares = 0.0;
    for (size_t j = 0; j < categories; ++j) {
      int n = counts[i][j];
      if (n < 0) throw Error("negative count in agreement table");
      row_sum += n;
      squares += static_cast<double>(n) * n;
      category_totals[j] += n;
    }
    if (raters < 0) raters = row_sum;
    if (row_sum != raters) {
      throw Error("agreement table row " + std::to_string(i) + " sums to " +
                  std::to_string(row_sum) + ", expected " +
                  std::to_string(raters));
    }
    if (raters < 2) throw Error("agreement needs at least 2 raters per item");
    agreement_sum +=
        (squares - raters) / (static_cast<double>(raters) * (raters - 1));
  }

  const double items = static_cast<double>(counts.size());
  const double mean_agreement = agreement_sum / items;
  double chance = 0.0;
  for (double total : category_totals) {
    double p = total / (items * raters);
    chance += p * p;
  }
  if (chance >= 1.0) {
    // Every rating in one category: agreement is necessarily perfect.
    if (mean_agreement >= 1.0) return 1.0;
    throw Error("degenerate agreement table: chance agreement is 1");
  }
  return (mean_agreement - chance) / (1.0 - chance);
}

AgreementTable TokenAgreementTable(
    const std::vector<std::vector<LabeledSentence>> &raters) {
  if (raters.size() < 2) throw ConfigError("agreement needs at least 2 raters");
  const auto &reference = raters.front();
  std::set<std::string> labels;
  for (size_t r = 0; r < raters.size(); ++r) {
    if (raters[r].size() != reference.size()) {
      throw ConfigError("rater " + std::to_string(r) + " has " +
                        std::to_string(raters[r].size()) +
                        " sentences, expected " +
                        std::to_string(reference.size()));
    }
    for (size_t s = 0; s < reference.size(); ++s) {
      if (raters[r][s].tokens != reference[s].tokens) {
        throw ConfigError("rater " + std::to_string(r) + " sentence " +
                          std::to_string(s) + " (line " +
                          std::to_string(raters[r][s].line) +
                          ") has different tokens");
      }
      labels.insert(raters[r][s].labels.begin(), raters[r][s].labels.end());
    }
  }

  std::map<std::string, size_t> column;
  for (const auto &label : labels) column.emplace(label, column.size());

  AgreementTable table;
  for (size_t s = 0; s < reference.size(); ++s) {
    for (size_t t = 0; t < reference[s].tokens.size(); ++t) {
      std::vector<int> row(column.size(), 0);
      for (const auto &rater : raters) ++row[column.at(rater[s].labels[t])];
      table.counts.push_back(std::move(row));
    }
  }
  return table;
}

RunAggregate AggregateRuns(const std::vector<double> &scores, bool sample) {
  if (scores.empty()) throw Error("no run scores to aggregate");
  RunAggregate result;
  result.scores = scores;

  // Welford's online update.
  double mean = 0.0;
  double m2 = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    double delta = scores[i] - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (scores[i] - mean);
  }
  result.mean = mean;
  size_t denominator = sample ? scores.size() - 1 : scores.size();
  result.std = denominator == 0 ? 0.0 : std::sqrt(m2 / denominator);
  return result;
}

CorpusStats ComputeCorpusStats(const SentenceSpans &spans) {
  CorpusStats stats;
  stats.total_sentences = spans.size();
  for (const auto &sentence : spans) {
    for (const EntitySpan &span : sentence) {
      ++stats.per_type[span.type];
      ++stats.total_entities;
    }
  }
  return stats;
}

CorpusStats ComputeCorpusStats(const std::vector<AnnotatedSentence> &corpus) {
  SentenceSpans spans;
  spans.reserve(corpus.size());
  for (const auto &sentence : corpus) spans.push_back(sentence.spans);
  return ComputeCorpusStats(spans);
}

std::string CorpusStatsToJson(const CorpusStats &stats) {
  ordered_json out;
  out["total_sentences"] = stats.total_sentences;
  out["total_entities"] = stats.total_entities;
  out["per_type"] = ordered_json::object();
  for (const auto &[type, count] : stats.per_type) out["per_type"][type] = count;
  return out.dump(2) + "\n";
}

}  // namespace coronaner

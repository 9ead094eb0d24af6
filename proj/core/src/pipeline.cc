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

#include "coronaner/pipeline.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <unordered_map>

#include "coronaner/corpus_io.h"
#include "coronaner/error.h"
#include "coronaner/gazetteer.h"
#include "coronaner/unicode.h"
#include "file_util.h"
#include "json.hpp"

namespace coronaner {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Typed accessors over one JSON object that reject unknown keys.
class ConfigObject {
 public:
  ConfigObject(const json &object, std::string where,
               std::set<std::string> allowed)
      : object_(object), where_(std::move(where)) {
    if (!object_.is_object()) throw ConfigError(where_ + " must be an object");
    for (const auto &[key, value] : object_.items()) {
      if (!allowed.count(key)) {
        throw ConfigError("unknown configuration key " + where_ + "." + key);
      }
    }
  }

  bool Has(const std::string &key) const {
    return object_.contains(key) && !object_.at(key).is_null();
  }

  const json &Get(const std::string &key) const { return object_.at(key); }

  std::string String(const std::string &key, std::string fallback = {}) const {
    if (!Has(key)) return fallback;
    if (!Get(key).is_string()) Fail(key, "a string");
    return Get(key).get<std::string>();
  }

  bool Bool(const std::string &key, bool fallback) const {
    if (!Has(key)) return fallback;
    if (!Get(key).is_boolean()) Fail(key, "a boolean");
    return Get(key).get<bool>();
  }

  long long Int(const std::string &key, long long fallback) const {
    if (!Has(key)) return fallback;
    if (!Get(key).is_number_integer()) Fail(key, "an integer");
    return Get(key).get<long long>();
  }

  std::vector<std::string> Strings(const std::string &key) const {
    std::vector<std::string> out;
    if (!Has(key)) return out;
    if (!Get(key).is_array()) Fail(key, "an array of strings");
    for (const json &item : Get(key)) {
      if (!item.is_string()) Fail(key, "an array of strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  std::string Path(const std::string &key, const fs::path &base) const {
    std::string value = String(key);
    if (value.empty()) return value;
    fs::path path(value);
    return (path.is_absolute() ? path : base / path).lexically_normal().string();
  }

  std::string Sub(const std::string &key) const { return where_ + "." + key; }

 private:
  [[noreturn]] void Fail(const std::string &key, const char *what) const {
    throw ConfigError("configuration key " + where_ + "." + key + " must be " +
                      what);
  }

  const json &object_;
  std::string where_;
};

std::u32string DecodeAll(const std::string &text) {
  std::u32string out;
  size_t pos = 0;
  while (pos < text.size()) {
    out.push_back(utf8::Decode(text, pos));
    pos += utf8::CharLength(text, pos);
  }
  return out;
}

KbSettings ParseKb(const ConfigObject &object, const fs::path &base) {
  KbSettings kb;
  kb.endpoint = object.String("endpoint");
  kb.cache_path = object.Path("cache", base);
  kb.timeout_seconds = static_cast<int>(object.Int("timeout_seconds", 60));
  kb.offline = object.Bool("offline", false);
  if (const char *override_endpoint = std::getenv(kKbEndpointEnv)) {
    if (*override_endpoint != '\0') kb.endpoint = override_endpoint;
  }
  return kb;
}

void RequireFile(const std::string &path, const std::string &what) {
  if (path.empty()) throw ConfigError(what + " is not configured");
  if (!fs::is_regular_file(path)) {
    throw ConfigError(what + " not found: " + path);
  }
}

void CheckKb(const KbSettings &kb, const std::string &what) {
  if (kb.cache_path.empty()) {
    throw ConfigError(what + ".cache is required (results are cached)");
  }
  if (!kb.offline && kb.endpoint.empty()) {
    throw ConfigError(what + ".endpoint is required unless offline");
  }
  if (kb.timeout_seconds <= 0) {
    throw ConfigError(what + ".timeout_seconds must be positive");
  }
}

std::shared_ptr<SparqlClient> MakeClient(
    const KbSettings &kb, std::shared_ptr<SparqlTransport> transport) {
  if (kb.offline) {
    transport = nullptr;
  } else if (transport == nullptr) {
    transport = std::make_shared<HttpSparqlTransport>();
  }
  return std::make_shared<SparqlClient>(
      kb.endpoint, std::make_shared<SparqlCache>(kb.cache_path),
      std::move(transport), std::chrono::seconds(kb.timeout_seconds));
}

void AttachPos(const std::string &path, bool lenient,
               std::vector<Sentence> *sentences,
               std::vector<std::string> *warnings) {
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < sentences->size(); ++i) {
    index.emplace((*sentences)[i].sent_id, i);
  }
  std::ifstream in = internal::OpenForRead(path);
  std::string line;
  int line_number = 0;
  size_t skipped = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string sent_id;
    std::vector<std::string> tags;
    try {
      json record = json::parse(line);
      sent_id = record.at("sent_id").get<std::string>();
      tags = record.at("pos").get<std::vector<std::string>>();
    } catch (const json::exception &e) {
      throw FormatError(path, line_number, e.what());
    }
    auto it = index.find(sent_id);
    Sentence *sentence = it == index.end() ? nullptr : &(*sentences)[it->second];
    if (sentence == nullptr || sentence->tokens.size() != tags.size()) {
      if (!lenient) {
        throw FormatError(path, line_number,
                          sentence == nullptr
                              ? "unknown sent_id " + sent_id
                              : "PoS count does not match tokens of " + sent_id);
      }
      ++skipped;
      continue;
    }
    for (size_t t = 0; t < tags.size(); ++t) sentence->tokens[t].pos = tags[t];
  }
  if (skipped > 0) {
    warnings->push_back("skipped " + std::to_string(skipped) +
                        " PoS records that did not match the corpus");
  }
}

SeedLexicon LoadSilver(const PipelineConfig &config,
                       std::shared_ptr<SparqlTransport> transport,
                       AnnotateSummary *summary) {
  if (!config.silver_seed_path.empty() &&
      fs::is_regular_file(config.silver_seed_path)) {
    LexiconLoadReport report;
    SeedLexicon lexicon = LoadLexicon(config.silver_seed_path,
                                      TypeRegistry::Default(), &report);
    summary->silver_seeds = report.rows;
    return lexicon;
  }
  if (!config.silver_fetch) return SeedLexicon{};

  auto client = MakeClient(config.silver_fetch->kb, std::move(transport));
  SilverFetchReport report;
  std::vector<SeedEntry> entries =
      FetchSilverSeeds(*client, config.silver_fetch->queries,
                       config.silver_fetch->max_rows, TypeRegistry::Default(),
                       &report);
  for (auto &warning : report.warnings) summary->warnings.push_back(warning);
  SeedLexicon lexicon;
  lexicon.version = "silver-fetch";
  for (auto &entry : entries) lexicon.Add(std::move(entry));
  summary->silver_seeds = entries.size();
  return lexicon;
}

// Writes to "<path>.tmp" siblings and renames them all at the end, so an
// error leaves no partial outputs behind.
class OutputSet {
 public:
  ~OutputSet() {
    for (const auto &[final_path, tmp_path] : files_) {
      std::error_code ignored;
      fs::remove(tmp_path, ignored);
    }
  }

  std::string Add(const std::string &path) {
    fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    std::string tmp = path + ".tmp";
    files_.emplace_back(path, tmp);
    return tmp;
  }

  void Commit() {
    for (const auto &[final_path, tmp_path] : files_) {
      fs::rename(tmp_path, final_path);
    }
    files_.clear();
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out = internal::OpenForWrite(path);
  out << text;
  internal::CheckWritten(out, path);
}

}  // namespace

PipelineConfig ParsePipelineConfig(const std::string &json_text,
                                   const std::string &base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  fs::path base(base_dir);
  PipelineConfig config;

  ConfigObject top(root, "config",
                   {"input", "seeds", "silver_fetch", "generic", "pos",
                    "harmonization", "text", "output", "options"});
  config.input_path = top.Path("input", base);
  config.pos_path = top.Path("pos", base);

  if (top.Has("seeds")) {
    ConfigObject seeds(top.Get("seeds"), top.Sub("seeds"), {"gold", "silver"});
    config.gold_seed_path = seeds.Path("gold", base);
    config.silver_seed_path = seeds.Path("silver", base);
  }

  if (top.Has("silver_fetch")) {
    ConfigObject fetch(top.Get("silver_fetch"), top.Sub("silver_fetch"),
                       {"endpoint", "queries", "cache", "max_rows",
                        "timeout_seconds", "offline", "output"});
    SilverFetchSettings settings;
    settings.kb = ParseKb(fetch, base);
    long long max_rows = fetch.Int("max_rows", 10000);
    if (max_rows <= 0) throw ConfigError("silver_fetch.max_rows must be positive");
    settings.max_rows = static_cast<size_t>(max_rows);
    settings.output_path = fetch.Path("output", base);
    if (fetch.Has("queries")) {
      const json &queries = fetch.Get("queries");
      if (!queries.is_object()) {
        throw ConfigError("silver_fetch.queries must map types to queries");
      }
      for (const auto &[type, query] : queries.items()) {
        if (!query.is_string()) {
          throw ConfigError("silver_fetch.queries." + type + " must be a string");
        }
        settings.queries[type] = query.get<std::string>();
      }
    }
    config.silver_fetch = std::move(settings);
  }

  if (top.Has("generic")) {
    ConfigObject generic(top.Get("generic"), top.Sub("generic"),
                         {"spans", "rules", "kb", "query_template"});
    config.generic_spans_path = generic.Path("spans", base);
    config.refinement_rules_path = generic.Path("rules", base);
    config.refinement_query_template = generic.String("query_template");
    if (generic.Has("kb")) {
      ConfigObject kb(generic.Get("kb"), generic.Sub("kb"),
                      {"endpoint", "cache", "timeout_seconds", "offline"});
      config.refinement_kb = ParseKb(kb, base);
    }
  }

  if (top.Has("harmonization")) {
    ConfigObject harmonization(top.Get("harmonization"),
                               top.Sub("harmonization"), {"priority"});
    if (harmonization.Has("priority")) {
      config.policy =
          HarmonizationPolicy::FromNames(harmonization.Strings("priority"));
    }
  }

  if (top.Has("text")) {
    ConfigObject text(top.Get("text"), top.Sub("text"),
                      {"strip_chars", "abbreviations", "punctuation"});
    if (text.Has("strip_chars")) {
      config.text.strip_chars = DecodeAll(text.String("strip_chars"));
    }
    if (text.Has("abbreviations")) {
      config.text.abbreviations = text.Strings("abbreviations");
    }
    if (text.Has("punctuation")) {
      config.text.punctuation = DecodeAll(text.String("punctuation"));
    }
  }

  if (top.Has("output")) {
    ConfigObject output(top.Get("output"), top.Sub("output"),
                        {"conll", "jsonl", "stats", "refinement_log"});
    config.conll_output = output.Path("conll", base);
    config.jsonl_output = output.Path("jsonl", base);
    config.stats_output = output.Path("stats", base);
    config.refinement_log_output = output.Path("refinement_log", base);
  }

  if (top.Has("options")) {
    ConfigObject options(top.Get("options"), top.Sub("options"),
                         {"strict", "case_sensitive", "pos_filter", "workers"});
    config.strict = options.Bool("strict", false);
    config.case_sensitive = options.Bool("case_sensitive", false);
    config.pos_filter = options.Bool("pos_filter", false);
    long long workers = options.Int("workers", 1);
    if (workers < 1 || workers > 256) {
      throw ConfigError("options.workers must be between 1 and 256");
    }
    config.workers = static_cast<int>(workers);
  }
  return config;
}

PipelineConfig LoadPipelineConfig(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("configuration file not found: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  PipelineConfig config = ParsePipelineConfig(
      buffer.str(), fs::absolute(path).parent_path().string());
  config.config_path = path;
  return config;
}

void ValidateConfig(const PipelineConfig &config, bool for_fetch) {
  if (config.silver_fetch) {
    const auto &fetch = *config.silver_fetch;
    CheckKb(fetch.kb, "silver_fetch");
    if (fetch.queries.empty()) {
      throw ConfigError("silver_fetch.queries has no entries");
    }
    for (const auto &[type, query] : fetch.queries) {
      TypeRegistry::Default().Get(type);
    }
  }

  if (for_fetch) {
    if (!config.silver_fetch) {
      throw ConfigError("silver_fetch is not configured");
    }
    if (config.silver_fetch->output_path.empty() &&
        config.silver_seed_path.empty()) {
      throw ConfigError(
          "neither silver_fetch.output nor seeds.silver names an output");
    }
    return;
  }

  RequireFile(config.input_path, "input corpus");
  RequireFile(config.gold_seed_path, "gold seed file");
  if (config.silver_seed_path.empty() && !config.silver_fetch) {
    throw ConfigError("configure seeds.silver or silver_fetch");
  }
  if (!config.silver_seed_path.empty() && !config.silver_fetch) {
    RequireFile(config.silver_seed_path, "silver seed file");
  }
  if (!config.generic_spans_path.empty()) {
    RequireFile(config.generic_spans_path, "generic span file");
  }
  if (!config.refinement_rules_path.empty()) {
    RequireFile(config.refinement_rules_path, "refinement rule file");
    if (!config.refinement_kb) {
      throw ConfigError("generic.rules requires generic.kb settings");
    }
    CheckKb(*config.refinement_kb, "generic.kb");
  }
  if (!config.pos_path.empty()) RequireFile(config.pos_path, "PoS file");
  if (config.pos_filter && config.pos_path.empty()) {
    throw ConfigError("pos_filter is set but no PoS file is configured");
  }
  if (config.conll_output.empty()) {
    throw ConfigError("output.conll is not configured");
  }
  if (config.jsonl_output.empty()) {
    throw ConfigError("output.jsonl is not configured");
  }
}

AnnotateResult Annotate(const PipelineConfig &config,
                        std::shared_ptr<SparqlTransport> transport) {
  ValidateConfig(config);
  AnnotateResult result;
  AnnotateSummary &summary = result.summary;
  const bool lenient = !config.strict;

  std::vector<Document> documents = ReadJsonlCorpus(config.input_path);
  summary.documents = documents.size();
  result.sentences = PrepareCorpus(documents, config.text, config.workers);
  if (!config.pos_path.empty()) {
    AttachPos(config.pos_path, lenient, &result.sentences, &summary.warnings);
  }
  summary.sentences = result.sentences.size();
  for (const Sentence &sentence : result.sentences) {
    summary.tokens += sentence.tokens.size();
  }

  LexiconLoadReport gold_report;
  SeedLexicon gold = LoadLexicon(config.gold_seed_path,
                                 TypeRegistry::Default(), &gold_report);
  summary.gold_seeds = gold_report.rows;
  SeedLexicon silver = LoadSilver(config, transport, &summary);
  std::vector<SeedConflict> conflicts;
  SeedLexicon lexicon = MergeLexicons(gold, silver, &conflicts);
  summary.lexicon_entries = lexicon.size();
  summary.seed_conflicts = conflicts.size() + gold_report.conflicts.size();

  MatchOptions match_options;
  match_options.case_sensitive = config.case_sensitive;
  match_options.pos_filter = config.pos_filter;
  CompiledMatcher matcher =
      CompiledMatcher::Compile(lexicon, match_options, &summary.warnings);

  // The two passes never observe each other's output.
  auto health_pass = [&] {
    return AnnotateHealth(result.sentences, matcher, config.workers);
  };
  auto generic_pass = [&]() -> GenericAnnotation {
    if (config.generic_spans_path.empty()) {
      GenericAnnotation empty;
      empty.spans.resize(result.sentences.size());
      return empty;
    }
    GenericImport import = LoadGenericSpans(
        config.generic_spans_path, result.sentences, lenient);
    size_t resolved = 0;
    for (auto &spans : import.spans) resolved += ResolveOverlaps(&spans);
    std::vector<RefinementRule> rules;
    std::unique_ptr<SparqlKnowledgeBase> kb;
    if (!config.refinement_rules_path.empty()) {
      rules = LoadRefinementRules(config.refinement_rules_path);
      kb = std::make_unique<SparqlKnowledgeBase>(
          MakeClient(*config.refinement_kb, transport),
          config.refinement_query_template.empty()
              ? SparqlKnowledgeBase::DefaultQueryTemplate()
              : config.refinement_query_template);
    }
    summary.generic_overlaps_resolved = resolved;
    return RefineGeneric(result.sentences, std::move(import), kb.get(), rules,
                         config.workers);
  };

  GenericAnnotation generic;
  if (config.workers > 1) {
    auto future = std::async(std::launch::async, generic_pass);
    result.health = health_pass();
    generic = future.get();
  } else {
    result.health = health_pass();
    generic = generic_pass();
  }
  result.generic = std::move(generic.spans);
  result.decisions = std::move(generic.decisions);
  summary.generic_imported = generic.import.imported;
  summary.generic_skipped = generic.import.skipped_unknown_sentence +
                            generic.import.skipped_out_of_bounds;
  summary.generic_retyped = generic.retyped;
  if (summary.generic_skipped > 0) {
    summary.warnings.push_back("skipped " +
                               std::to_string(summary.generic_skipped) +
                               " generic span records (lenient mode)");
  }

  HarmonizeStats harmonize_stats;
  result.spans.resize(result.sentences.size());
  for (size_t i = 0; i < result.sentences.size(); ++i) {
    summary.health_spans += result.health[i].size();
    result.spans[i] = Harmonize(result.health[i], result.generic[i],
                                config.policy, &harmonize_stats);
  }
  summary.generic_dropped =
      harmonize_stats.dropped_generic + harmonize_stats.dropped_health;
  summary.entities = ComputeCorpusStats(result.spans);
  return result;
}

AnnotateResult RunAnnotate(const PipelineConfig &config,
                           std::shared_ptr<SparqlTransport> transport) {
  AnnotateResult result = Annotate(config, std::move(transport));

  std::vector<LabeledSentence> conll;
  std::vector<AnnotatedSentence> annotated;
  for (size_t i = 0; i < result.sentences.size(); ++i) {
    AnnotatedSentence sentence =
        MakeAnnotatedSentence(result.sentences[i], result.spans[i]);
    conll.push_back({sentence.tokens, sentence.labels});
    annotated.push_back(std::move(sentence));
  }

  OutputSet outputs;
  WriteConll(conll, outputs.Add(config.conll_output));
  WriteAnnotatedJsonl(annotated, outputs.Add(config.jsonl_output));
  if (!config.stats_output.empty()) {
    WriteText(outputs.Add(config.stats_output), SummaryToJson(result.summary));
  }
  if (!config.refinement_log_output.empty()) {
    std::ostringstream log;
    for (const RefinementDecision &decision : result.decisions) {
      ordered_json line;
      line["sent_id"] = decision.sent_id;
      line["start"] = decision.start;
      line["end"] = decision.end;
      line["surface"] = decision.surface;
      line["item"] = decision.item;
      line["old_type"] = decision.old_type;
      line["new_type"] = decision.new_type;
      log << line.dump() << '\n';
    }
    WriteText(outputs.Add(config.refinement_log_output), log.str());
  }
  outputs.Commit();
  return result;
}

std::string SummaryToJson(const AnnotateSummary &summary) {
  ordered_json out;
  out["documents"] = summary.documents;
  out["sentences"] = summary.sentences;
  out["tokens"] = summary.tokens;
  out["seeds"] = {{"gold_rows", summary.gold_seeds},
                  {"silver_rows", summary.silver_seeds},
                  {"lexicon_entries", summary.lexicon_entries},
                  {"conflicts", summary.seed_conflicts}};
  out["health_spans"] = summary.health_spans;
  out["generic"] = {{"imported", summary.generic_imported},
                    {"skipped", summary.generic_skipped},
                    {"overlaps_resolved", summary.generic_overlaps_resolved},
                    {"retyped", summary.generic_retyped},
                    {"dropped_in_harmonization", summary.generic_dropped}};
  out["total_entities"] = summary.entities.total_entities;
  out["per_type"] = ordered_json::object();
  for (const auto &[type, count] : summary.entities.per_type) {
    out["per_type"][type] = count;
  }
  return out.dump(2) + "\n";
}

FetchSummary RunFetchSeeds(const PipelineConfig &config,
                           std::shared_ptr<SparqlTransport> transport) {
  ValidateConfig(config, /*for_fetch=*/true);
  const SilverFetchSettings &settings = *config.silver_fetch;
  auto client = MakeClient(settings.kb, std::move(transport));

  SilverFetchReport report;
  std::vector<SeedEntry> entries = FetchSilverSeeds(
      *client, settings.queries, settings.max_rows, TypeRegistry::Default(),
      &report);

  const std::string &output = settings.output_path.empty()
                                  ? config.silver_seed_path
                                  : settings.output_path;
  OutputSet outputs;
  WriteLexiconTsv(entries, outputs.Add(output));
  outputs.Commit();

  FetchSummary summary;
  summary.entries = entries.size();
  summary.rows = report.rows;
  summary.network_requests = client->network_requests();
  summary.warnings = std::move(report.warnings);
  return summary;
}

EvalReport RunEvaluate(const std::string &gold_path,
                       const std::string &pred_path,
                       const std::string &json_path, bool lenient) {
  std::vector<LabeledSentence> gold = ReadConll(gold_path, lenient);
  std::vector<LabeledSentence> pred = ReadConll(pred_path, lenient);
  if (gold.size() != pred.size()) {
    throw ConfigError("sentence count mismatch: " + gold_path + " has " +
                      std::to_string(gold.size()) + ", " + pred_path +
                      " has " + std::to_string(pred.size()));
  }

  SpansById gold_spans;
  SpansById pred_spans;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].tokens.size() != pred[i].tokens.size()) {
      throw ConfigError(pred_path + ":" + std::to_string(pred[i].line) +
                        ": sentence " + std::to_string(i) + " has " +
                        std::to_string(pred[i].tokens.size()) +
                        " tokens, gold (" + gold_path + ":" +
                        std::to_string(gold[i].line) + ") has " +
                        std::to_string(gold[i].tokens.size()));
    }
    std::string id = std::to_string(i);
    gold_spans[id] = BioToSpans(gold[i].labels, lenient);
    pred_spans[id] = BioToSpans(pred[i].labels, lenient);
  }

  EvalReport report = EntityF1(gold_spans, pred_spans);
  if (!json_path.empty()) {
    WriteText(json_path,
              ReportToJson(report, {{"gold", gold_path},
                                    {"pred", pred_path},
                                    {"matching", "exact"},
                                    {"scheme", "BIO"},
                                    {"lenient", lenient ? "true" : "false"}}));
  }
  return report;
}

CorpusStats RunStats(const std::string &path) {
  if (fs::path(path).extension() == ".jsonl") {
    return ComputeCorpusStats(ReadAnnotatedJsonl(path));
  }
  SentenceSpans spans;
  for (const LabeledSentence &sentence : ReadConll(path)) {
    spans.push_back(BioToSpans(sentence.labels));
  }
  return ComputeCorpusStats(spans);
}

double RunAgreement(const std::vector<std::string> &rater_paths) {
  std::vector<std::vector<LabeledSentence>> raters;
  for (const std::string &path : rater_paths) raters.push_back(ReadConll(path));
  return FleissKappa(TokenAgreementTable(raters));
}

}  // namespace coronaner

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

#include "coronaner/generic_annotation.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

#include "coronaner/error.h"
#include "coronaner/parallel.h"
#include "coronaner/seed_store.h"
#include "coronaner/unicode.h"
#include "file_util.h"
#include "json.hpp"

namespace coronaner {

using nlohmann::json;

namespace {

std::string JoinWords(const std::vector<std::string> &words) {
  std::string out;
  for (const auto &word : words) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

std::string EscapeLiteral(const std::string &text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '"':
        out += "\\\"";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

void ReplaceAll(std::string *text, const std::string &from,
                const std::string &to) {
  size_t pos = 0;
  while ((pos = text->find(from, pos)) != std::string::npos) {
    text->replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string UnknownGenericType(const std::string &name,
                               const TypeRegistry &registry) {
  return "unknown generic entity type " + name + " (valid: " +
         JoinWords(registry.Names(EntityKind::kGeneric)) + ")";
}

}  // namespace

GenericImport LoadGenericSpans(const std::string &path,
                               const std::vector<Sentence> &sentences,
                               bool lenient, const TypeRegistry &registry) {
  std::ifstream in = internal::OpenForRead(path);
  return LoadGenericSpans(in, path, sentences, lenient, registry);
}

GenericImport LoadGenericSpans(std::istream &in, const std::string &name,
                               const std::vector<Sentence> &sentences,
                               bool lenient, const TypeRegistry &registry) {
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < sentences.size(); ++i) {
    index.emplace(sentences[i].sent_id, i);
  }

  GenericImport result;
  result.spans.resize(sentences.size());
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++result.records;

    json record;
    std::string sent_id;
    try {
      record = json::parse(line);
      sent_id = record.at("sent_id").get<std::string>();
      if (!record.at("spans").is_array()) {
        throw FormatError(name, line_number, "'spans' is not an array");
      }
    } catch (const json::exception &e) {
      throw FormatError(name, line_number, e.what());
    }

    auto found = index.find(sent_id);
    if (found == index.end()) {
      if (!lenient) {
        throw FormatError(name, line_number, "unknown sent_id " + sent_id);
      }
      ++result.skipped_unknown_sentence;
      continue;
    }
    const Sentence &sentence = sentences[found->second];

    for (const json &item : record["spans"]) {
      EntitySpan span;
      std::string type_name;
      try {
        long long start = item.at("start").get<long long>();
        long long end = item.at("end").get<long long>();
        type_name = item.at("type").get<std::string>();
        if (item.contains("score") && !item["score"].is_null()) {
          span.score = item["score"].get<double>();
        }
        if (start < 0 || end <= start ||
            static_cast<size_t>(end) > sentence.size()) {
          if (!lenient) {
            throw FormatError(
                name, line_number,
                "span [" + std::to_string(start) + "," + std::to_string(end) +
                    ") out of bounds for sentence " + sent_id + " with " +
                    std::to_string(sentence.size()) + " tokens");
          }
          ++result.skipped_out_of_bounds;
          continue;
        }
        span.start = static_cast<size_t>(start);
        span.end = static_cast<size_t>(end);
      } catch (const json::exception &e) {
        throw FormatError(name, line_number, e.what());
      }

      auto type = registry.Find(type_name);
      if (!type || type->kind != EntityKind::kGeneric) {
        throw ConfigError(name + ":" + std::to_string(line_number) + ": " +
                          UnknownGenericType(type_name, registry));
      }
      span.type = type->name;
      span.source = SpanSource::kModel;
      result.spans[found->second].push_back(std::move(span));
      ++result.imported;
    }
  }

  for (auto &spans : result.spans) {
    std::stable_sort(spans.begin(), spans.end(),
                     [](const EntitySpan &a, const EntitySpan &b) {
                       return std::tie(a.start, a.end) <
                              std::tie(b.start, b.end);
                     });
  }
  return result;
}

void ValidateRefinementRules(const std::vector<RefinementRule> &rules,
                             const TypeRegistry &registry) {
  std::set<int> priorities;
  for (const RefinementRule &rule : rules) {
    if (rule.kb_class.empty()) throw ConfigError("refinement rule without class");
    auto type = registry.Find(rule.target_type);
    if (!type || type->kind != EntityKind::kGeneric) {
      throw ConfigError("refinement rule for " + rule.kb_class + ": " +
                        UnknownGenericType(rule.target_type, registry));
    }
    if (!priorities.insert(rule.priority).second) {
      throw ConfigError("duplicate refinement rule priority " +
                        std::to_string(rule.priority));
    }
  }
}

std::vector<RefinementRule> LoadRefinementRules(const std::string &path,
                                                const TypeRegistry &registry) {
  std::ifstream in = internal::OpenForRead(path);
  std::vector<RefinementRule> rules;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t first = line.find('\t');
    size_t second =
        first == std::string::npos ? first : line.find('\t', first + 1);
    if (second == std::string::npos ||
        line.find('\t', second + 1) != std::string::npos) {
      throw FormatError(path, line_number,
                        "expected kb_class<TAB>target_type<TAB>priority");
    }
    RefinementRule rule;
    rule.kb_class = line.substr(0, first);
    rule.target_type = utf8::AsciiUpper(line.substr(first + 1, second - first - 1));
    std::string priority = line.substr(second + 1);
    try {
      size_t used = 0;
      rule.priority = std::stoi(priority, &used);
      if (used != priority.size()) throw std::invalid_argument(priority);
    } catch (const std::exception &) {
      throw FormatError(path, line_number,
                        "priority is not an integer: '" + priority + "'");
    }
    rules.push_back(std::move(rule));
  }
  ValidateRefinementRules(rules, registry);
  return rules;
}

SparqlKnowledgeBase::SparqlKnowledgeBase(std::shared_ptr<SparqlClient> client,
                                         std::string query_template)
    : client_(std::move(client)), query_template_(std::move(query_template)) {}

std::string SparqlKnowledgeBase::DefaultQueryTemplate() {
  return "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>\n"
         "PREFIX skos: <http://www.w3.org/2004/02/skos/core#>\n"
         "PREFIX wdt: <http://www.wikidata.org/prop/direct/>\n"
         "SELECT DISTINCT ?item ?class ?label WHERE {\n"
         "  VALUES ?label { \"{surface}\"@en \"{label}\"@en }\n"
         "  ?item rdfs:label|skos:altLabel ?label .\n"
         "  ?item wdt:P31 ?class .\n"
         "} LIMIT 200\n";
}

std::vector<KbItem> SparqlKnowledgeBase::Lookup(const std::string &label,
                                                const std::string &surface) {
  std::string query = query_template_;
  ReplaceAll(&query, "{label}", EscapeLiteral(label));
  ReplaceAll(&query, "{surface}", EscapeLiteral(surface));

  std::map<std::string, std::set<std::string>> items;
  for (const SparqlRow &row : client_->Select(label, query)) {
    auto item = row.find("item");
    if (item == row.end()) continue;
    auto returned_label = row.find("label");
    if (returned_label != row.end()) {
      std::vector<std::string> norm;
      try {
        norm = NormalizeSurface(CleanText(returned_label->second));
      } catch (const Error &) {
        continue;
      }
      if (JoinWords(norm) != label) continue;
    }
    auto &classes = items[ItemIdFromUri(item->second)];
    auto cls = row.find("class");
    if (cls != row.end()) classes.insert(ItemIdFromUri(cls->second));
  }

  std::vector<KbItem> result;
  for (auto &[id, classes] : items) {
    result.push_back({id, {classes.begin(), classes.end()}});
  }
  return result;
}

EntitySpan RefineSpan(const EntitySpan &span, const Sentence &sentence,
                      KnowledgeBase &kb,
                      const std::vector<RefinementRule> &rules,
                      RefinementDecision *decision) {
  EntitySpan refined = span;
  std::string surface = JoinTokens(sentence.tokens, span.start, span.end);
  std::string label = JoinWords(NormalizeSurface(surface));

  std::string matched_item = "MISS";
  const RefinementRule *best = nullptr;
  if (span.source == SpanSource::kModel) {
    std::vector<KbItem> items = kb.Lookup(label, surface);
    if (!items.empty()) matched_item = items.front().id;
    for (const KbItem &item : items) {
      for (const RefinementRule &rule : rules) {
        if (std::find(item.classes.begin(), item.classes.end(),
                      rule.kb_class) == item.classes.end()) {
          continue;
        }
        if (best == nullptr || rule.priority > best->priority) {
          best = &rule;
          matched_item = item.id;
        }
      }
    }
    if (best != nullptr) refined.type = best->target_type;
  }

  if (decision != nullptr) {
    decision->sent_id = sentence.sent_id;
    decision->start = span.start;
    decision->end = span.end;
    decision->surface = label;
    decision->item = matched_item;
    decision->old_type = span.type;
    decision->new_type = refined.type;
  }
  return refined;
}

GenericAnnotation RefineGeneric(const std::vector<Sentence> &sentences,
                                GenericImport import, KnowledgeBase *kb,
                                const std::vector<RefinementRule> &rules,
                                int workers) {
  GenericAnnotation result;
  result.spans = import.spans;
  result.import = std::move(import);
  if (rules.empty()) return result;
  if (kb == nullptr) {
    throw ConfigError("refinement rules given without a knowledge base");
  }

  std::vector<std::vector<RefinementDecision>> decisions(sentences.size());
  ParallelFor(sentences.size(), workers, [&](size_t i) {
    for (EntitySpan &span : result.spans[i]) {
      RefinementDecision decision;
      span = RefineSpan(span, sentences[i], *kb, rules, &decision);
      decisions[i].push_back(std::move(decision));
    }
  });
  for (auto &batch : decisions) {
    for (auto &decision : batch) {
      if (decision.old_type != decision.new_type) ++result.retyped;
      result.decisions.push_back(std::move(decision));
    }
  }
  return result;
}

GenericAnnotation AnnotateGeneric(const std::vector<Sentence> &sentences,
                                  const std::string &spans_path,
                                  KnowledgeBase *kb,
                                  const std::vector<RefinementRule> &rules,
                                  bool lenient, int workers,
                                  const TypeRegistry &registry) {
  ValidateRefinementRules(rules, registry);
  return RefineGeneric(
      sentences, LoadGenericSpans(spans_path, sentences, lenient, registry), kb,
      rules, workers);
}

}  // namespace coronaner

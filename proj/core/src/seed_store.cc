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

#include "coronaner/seed_store.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "coronaner/error.h"
#include "coronaner/unicode.h"
#include "file_util.h"

namespace coronaner {

namespace {

std::string JoinNorm(const std::vector<std::string> &tokens) {
  std::string out;
  for (const auto &token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

// Strict weak order among entries of the same type: the smaller entry is
// the one kept.
bool Preferred(const SeedEntry &a, const SeedEntry &b) {
  return std::tie(a.provenance, a.source, a.surface) <
         std::tie(b.provenance, b.source, b.surface);
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string SanitizeField(std::string text) {
  for (char &c : text) {
    if (utf8::IsSpace(c)) c = ' ';
  }
  return text;
}

}  // namespace

std::string_view ProvenanceName(Provenance provenance) {
  return provenance == Provenance::kGold ? "GOLD" : "SILVER";
}

std::vector<std::string> NormalizeSurface(std::string_view surface,
                                          bool case_fold,
                                          const TextOptions &options) {
  std::vector<std::string> tokens;
  for (const Token &token : Tokenize(surface, options)) {
    tokens.push_back(case_fold ? utf8::FoldCase(token.text) : token.text);
  }
  if (tokens.empty()) {
    throw Error("surface '" + std::string(surface) +
                "' normalizes to zero tokens");
  }
  return tokens;
}

SeedLexicon::AddResult SeedLexicon::Add(SeedEntry entry,
                                        std::vector<SeedConflict> *conflicts) {
  auto [it, inserted] = entries_.try_emplace(entry.norm_tokens, entry);
  if (inserted) return AddResult::kAdded;

  SeedEntry &existing = it->second;
  if (existing.entity_type == entry.entity_type) {
    if (Preferred(entry, existing)) existing = std::move(entry);
    return AddResult::kDuplicate;
  }

  if (existing.provenance == Provenance::kGold &&
      entry.provenance == Provenance::kGold) {
    throw ConfigError("inconsistent gold seeds: '" +
                      JoinNorm(entry.norm_tokens) + "' is typed both " +
                      existing.entity_type + " and " + entry.entity_type);
  }

  bool replace;
  if (existing.provenance != entry.provenance) {
    replace = entry.provenance == Provenance::kGold;
  } else {
    replace = entry.entity_type < existing.entity_type;
  }
  if (replace) std::swap(existing, entry);
  if (conflicts != nullptr) conflicts->push_back({existing, std::move(entry)});
  return AddResult::kConflict;
}

const SeedEntry *SeedLexicon::Find(
    const std::vector<std::string> &norm_tokens) const {
  auto it = entries_.find(norm_tokens);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<SeedEntry> SeedLexicon::entries() const {
  std::vector<SeedEntry> out;
  out.reserve(entries_.size());
  for (const auto &[key, entry] : entries_) out.push_back(entry);
  return out;
}

SeedLexicon LoadLexicon(const std::string &path, const TypeRegistry &registry,
                        LexiconLoadReport *report) {
  std::ifstream in = internal::OpenForRead(path);
  return LoadLexicon(in, path, registry, report);
}

SeedLexicon LoadLexicon(std::istream &in, const std::string &name,
                        const TypeRegistry &registry,
                        LexiconLoadReport *report) {
  LexiconLoadReport local;
  LexiconLoadReport &stats = report != nullptr ? *report : local;
  SeedLexicon lexicon;
  lexicon.version = name;

  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != 4) {
      throw FormatError(name, row,
                        "expected 4 tab-separated columns, got " +
                            std::to_string(fields.size()));
    }
    if (fields[0].find_first_not_of(" \t") == std::string::npos) {
      throw FormatError(name, row, "empty surface");
    }

    SeedEntry entry;
    entry.surface = fields[0];
    try {
      entry.entity_type = registry.Get(fields[1]).name;
    } catch (const ConfigError &e) {
      throw ConfigError(name + ":" + std::to_string(row) + ": " + e.what());
    }
    std::string provenance = utf8::AsciiUpper(fields[2]);
    if (provenance == "GOLD") {
      entry.provenance = Provenance::kGold;
    } else if (provenance == "SILVER") {
      entry.provenance = Provenance::kSilver;
    } else {
      throw FormatError(name, row, "provenance must be GOLD or SILVER, got '" +
                                       fields[2] + "'");
    }
    entry.source = fields[3];
    try {
      entry.norm_tokens = NormalizeSurface(entry.surface);
    } catch (const Error &e) {
      throw FormatError(name, row, e.what());
    }

    ++stats.rows;
    if (lexicon.Add(std::move(entry), &stats.conflicts) ==
        SeedLexicon::AddResult::kDuplicate) {
      ++stats.duplicates;
    }
  }
  return lexicon;
}

void WriteLexiconTsv(const std::vector<SeedEntry> &entries,
                     const std::string &path) {
  std::ofstream out = internal::OpenForWrite(path);
  WriteLexiconTsv(entries, out);
  internal::CheckWritten(out, path);
}

void WriteLexiconTsv(const std::vector<SeedEntry> &entries, std::ostream &out) {
  std::vector<const SeedEntry *> sorted;
  for (const auto &entry : entries) sorted.push_back(&entry);
  std::sort(sorted.begin(), sorted.end(), [](const auto *a, const auto *b) {
    return std::tie(a->entity_type, a->norm_tokens, a->source, a->surface) <
           std::tie(b->entity_type, b->norm_tokens, b->source, b->surface);
  });
  out << "# surface\tentity_type\tprovenance\tsource\n";
  for (const SeedEntry *entry : sorted) {
    out << SanitizeField(entry->surface) << '\t' << entry->entity_type << '\t'
        << ProvenanceName(entry->provenance) << '\t'
        << SanitizeField(entry->source) << '\n';
  }
}

SeedLexicon MergeLexicons(const SeedLexicon &a, const SeedLexicon &b,
                          std::vector<SeedConflict> *conflicts) {
  SeedLexicon merged;
  for (const SeedEntry &entry : a.entries()) merged.Add(entry);
  for (const SeedEntry &entry : b.entries()) merged.Add(entry, conflicts);
  if (a.version.empty() || b.version.empty() || a.version == b.version) {
    merged.version = a.version.empty() ? b.version : a.version;
  } else {
    merged.version = a.version + "+" + b.version;
  }
  merged.created_at = std::max(a.created_at, b.created_at);
  return merged;
}

std::vector<SeedEntry> FetchSilverSeeds(
    SparqlClient &client, const std::map<std::string, std::string> &type_queries,
    size_t max_rows, const TypeRegistry &registry, SilverFetchReport *report) {
  SilverFetchReport local;
  SilverFetchReport &stats = report != nullptr ? *report : local;

  using Key = std::tuple<std::string, std::vector<std::string>, std::string,
                         std::string>;
  std::set<Key> seen;
  std::vector<SeedEntry> entries;

  for (const auto &[type_name, query] : type_queries) {
    const std::string type = registry.Get(type_name).name;
    std::vector<SparqlRow> rows;
    try {
      rows = client.Select(type, query);
    } catch (const FetchError &) {
      throw;
    } catch (const Error &e) {
      throw Error("malformed response from " + client.endpoint() + " for " +
                  type + ": " + e.what());
    }
    if (rows.empty()) {
      stats.warnings.push_back("no rows returned for " + type);
      continue;
    }
    if (rows.size() > max_rows) rows.resize(max_rows);
    stats.rows += rows.size();

    for (const SparqlRow &row : rows) {
      auto item = row.find("item");
      if (item == row.end()) {
        throw Error("malformed response from " + client.endpoint() + " for " +
                    type + ": row without ?item");
      }
      std::string source = ItemIdFromUri(item->second);
      for (const char *variable : {"label", "altLabel"}) {
        auto label = row.find(variable);
        if (label == row.end()) continue;
        std::string surface = CleanText(label->second);
        if (surface.empty()) continue;
        SeedEntry entry;
        try {
          entry.norm_tokens = NormalizeSurface(surface);
        } catch (const Error &) {
          stats.warnings.push_back("skipping label without tokens for " +
                                   source);
          continue;
        }
        entry.surface = std::move(surface);
        entry.entity_type = type;
        entry.provenance = Provenance::kSilver;
        entry.source = source;
        if (seen.emplace(entry.entity_type, entry.norm_tokens, entry.source,
                         entry.surface)
                .second) {
          entries.push_back(std::move(entry));
        }
      }
    }
  }

  std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
    return std::tie(a.entity_type, a.norm_tokens, a.source, a.surface) <
           std::tie(b.entity_type, b.norm_tokens, b.source, b.surface);
  });
  return entries;
}

}  // namespace coronaner

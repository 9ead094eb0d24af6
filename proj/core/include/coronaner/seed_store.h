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

// Gold (expert) and silver (knowledge-base harvested) seed lexicons.
//
// Seed TSV format, UTF-8, '#' comment lines and blank lines skipped:
//
//   surface <TAB> entity_type <TAB> GOLD|SILVER <TAB> source

#ifndef CORONANER_SEED_STORE_H_
#define CORONANER_SEED_STORE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coronaner/entity_types.h"
#include "coronaner/sparql.h"
#include "coronaner/text.h"

namespace coronaner {

enum class Provenance { kGold, kSilver };

std::string_view ProvenanceName(Provenance provenance);

struct SeedEntry {
  std::string surface;
  std::vector<std::string> norm_tokens;
  std::string entity_type;
  Provenance provenance = Provenance::kGold;
  std::string source;

  bool operator==(const SeedEntry &other) const = default;
};

// Entry kept in favour of another entry with the same normalized tokens but
// a different entity type.
struct SeedConflict {
  SeedEntry kept;
  SeedEntry dropped;
};

// Tokenizes with the corpus tokenizer and case-folds each token (unless
// case_fold is false). Throws Error if the surface yields no tokens.
std::vector<std::string> NormalizeSurface(std::string_view surface,
                                          bool case_fold = true,
                                          const TextOptions &options = {});

// A set of seeds holding at most one entry per normalized token sequence.
//
// Entries with equal norm_tokens are resolved on insertion, independently
// of insertion order:
//   - same type: one entry is kept (GOLD over SILVER, then smallest
//     source, then smallest surface);
//   - different type, GOLD vs SILVER: GOLD wins, a conflict is recorded;
//   - different type, SILVER vs SILVER: smallest type name wins, a conflict
//     is recorded;
//   - different type, GOLD vs GOLD: ConfigError.
class SeedLexicon {
 public:
  enum class AddResult { kAdded, kDuplicate, kConflict };

  AddResult Add(SeedEntry entry, std::vector<SeedConflict> *conflicts = nullptr);

  const SeedEntry *Find(const std::vector<std::string> &norm_tokens) const;

  // Entries ordered by norm_tokens.
  std::vector<SeedEntry> entries() const;
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::string version;
  std::string created_at;

  // Compares entries only.
  bool operator==(const SeedLexicon &other) const {
    return entries_ == other.entries_;
  }

 private:
  std::map<std::vector<std::string>, SeedEntry> entries_;
};

struct LexiconLoadReport {
  size_t rows = 0;
  size_t duplicates = 0;
  std::vector<SeedConflict> conflicts;
};

// Reads a seed TSV file. Entity types are resolved against `registry` and
// stored under their canonical name. Throws ConfigError for unknown types
// and FormatError (with row number) for malformed rows or empty surfaces.
SeedLexicon LoadLexicon(const std::string &path,
                        const TypeRegistry &registry = TypeRegistry::Default(),
                        LexiconLoadReport *report = nullptr);
SeedLexicon LoadLexicon(std::istream &in, const std::string &name,
                        const TypeRegistry &registry = TypeRegistry::Default(),
                        LexiconLoadReport *report = nullptr);

// Writes entries in seed TSV format, sorted by (type, norm_tokens, source).
void WriteLexiconTsv(const std::vector<SeedEntry> &entries,
                     const std::string &path);
void WriteLexiconTsv(const std::vector<SeedEntry> &entries, std::ostream &out);

// Union of both lexicons under the SeedLexicon resolution rules. Commutative,
// idempotent, and the empty lexicon is its identity.
SeedLexicon MergeLexicons(const SeedLexicon &a, const SeedLexicon &b,
                          std::vector<SeedConflict> *conflicts = nullptr);

struct SilverFetchReport {
  std::vector<std::string> warnings;
  size_t rows = 0;
};

// Runs one SELECT per entity type. Each query must bind ?item and ?label
// and may bind ?altLabel; every label becomes a SILVER entry whose source is
// the item identifier. At most max_rows result rows are used per type.
// Results are deduplicated and sorted by (type, norm_tokens, source,
// surface). Types with zero rows produce a warning.
std::vector<SeedEntry> FetchSilverSeeds(
    SparqlClient &client, const std::map<std::string, std::string> &type_queries,
    size_t max_rows, const TypeRegistry &registry = TypeRegistry::Default(),
    SilverFetchReport *report = nullptr);

}  // namespace coronaner

#endif  // CORONANER_SEED_STORE_H_

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

// Seed lexicon matching over token sequences (health entity annotation).

#ifndef CORONANER_GAZETTEER_H_
#define CORONANER_GAZETTEER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coronaner/seed_store.h"
#include "coronaner/span.h"
#include "coronaner/text.h"

namespace coronaner {

struct MatchOptions {
  // Match token text exactly instead of case-folded.
  bool case_sensitive = false;

  // Require at least one noun or proper-noun token (PTB "NN*" or UD
  // "NOUN"/"PROPN") in every match. Spans whose tokens carry no PoS tags at
  // all are not filtered.
  bool pos_filter = false;
};

// Token-level prefix tree over the seed patterns. Immutable once compiled
// and safe to share between threads.
class CompiledMatcher {
 public:
  struct Payload {
    std::string entity_type;
    Provenance provenance = Provenance::kGold;
    std::string source;
  };

  CompiledMatcher() : nodes_(1) {}

  // Entries are inserted in sorted order, so the result does not depend on
  // how the lexicon was built. On identical token paths a GOLD payload
  // shadows a SILVER one. An empty lexicon yields a matcher that never
  // matches and adds a warning.
  static CompiledMatcher Compile(const SeedLexicon &lexicon,
                                 const MatchOptions &options = {},
                                 std::vector<std::string> *warnings = nullptr);

  // Non-overlapping spans, leftmost start first, longest match at a given
  // start, scanning resumes at the end of each accepted span.
  std::vector<EntitySpan> Match(const Sentence &sentence) const;

  // Payload for an exact pattern (already normalized), if accepted.
  const Payload *Lookup(const std::vector<std::string> &pattern) const;

  size_t accepting_states() const { return accepting_states_; }
  size_t max_pattern_len() const { return max_pattern_len_; }
  size_t node_count() const { return nodes_.size(); }
  const MatchOptions &options() const { return options_; }

 private:
  struct Node {
    std::unordered_map<std::string, uint32_t> children;
    std::optional<Payload> payload;
  };

  void Insert(const std::vector<std::string> &pattern, Payload payload);
  std::optional<uint32_t> Child(uint32_t node, const std::string &token) const;

  std::vector<Node> nodes_;
  size_t accepting_states_ = 0;
  size_t max_pattern_len_ = 0;
  MatchOptions options_;
};

// Match() over every sentence on up to `workers` threads. Result i belongs
// to sentences[i].
SentenceSpans AnnotateHealth(const std::vector<Sentence> &sentences,
                             const CompiledMatcher &matcher, int workers = 1);

}  // namespace coronaner

#endif  // CORONANER_GAZETTEER_H_

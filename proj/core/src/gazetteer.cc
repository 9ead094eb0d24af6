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

#include "coronaner/gazetteer.h"

#include <algorithm>
#include <tuple>

#include "coronaner/parallel.h"
#include "coronaner/unicode.h"

namespace coronaner {

namespace {

bool IsNounTag(const std::string &tag) {
  return tag.rfind("NN", 0) == 0 || tag == "NOUN" || tag == "PROPN";
}

bool PassesPosFilter(const Sentence &sentence, size_t start, size_t end) {
  bool tagged = false;
  for (size_t i = start; i < end; ++i) {
    const auto &pos = sentence.tokens[i].pos;
    if (!pos) continue;
    tagged = true;
    if (IsNounTag(*pos)) return true;
  }
  return !tagged;
}

}  // namespace

CompiledMatcher CompiledMatcher::Compile(const SeedLexicon &lexicon,
                                         const MatchOptions &options,
                                         std::vector<std::string> *warnings) {
  CompiledMatcher matcher;
  matcher.options_ = options;

  struct Pattern {
    std::vector<std::string> tokens;
    const SeedEntry *entry;
  };
  std::vector<SeedEntry> entries = lexicon.entries();
  std::vector<Pattern> patterns;
  patterns.reserve(entries.size());
  for (const SeedEntry &entry : entries) {
    std::vector<std::string> tokens =
        options.case_sensitive ? NormalizeSurface(entry.surface, false)
                               : entry.norm_tokens;
    patterns.push_back({std::move(tokens), &entry});
  }
  std::sort(patterns.begin(), patterns.end(), [](const auto &a, const auto &b) {
    return std::tie(a.tokens, a.entry->provenance, a.entry->entity_type,
                    a.entry->source) < std::tie(b.tokens, b.entry->provenance,
                                                b.entry->entity_type,
                                                b.entry->source);
  });

  for (const Pattern &pattern : patterns) {
    matcher.Insert(pattern.tokens,
                   Payload{pattern.entry->entity_type,
                           pattern.entry->provenance, pattern.entry->source});
  }
  if (matcher.accepting_states_ == 0 && warnings != nullptr) {
    warnings->push_back("seed lexicon is empty; matcher never matches");
  }
  return matcher;
}

void CompiledMatcher::Insert(const std::vector<std::string> &pattern,
                             Payload payload) {
  uint32_t node = 0;
  for (const std::string &token : pattern) {
    auto it = nodes_[node].children.find(token);
    if (it == nodes_[node].children.end()) {
      uint32_t child = static_cast<uint32_t>(nodes_.size());
      nodes_[node].children.emplace(token, child);
      nodes_.emplace_back();
      node = child;
    } else {
      node = it->second;
    }
  }
  auto &slot = nodes_[node].payload;
  if (!slot) {
    slot = std::move(payload);
    ++accepting_states_;
    max_pattern_len_ = std::max(max_pattern_len_, pattern.size());
  } else if (slot->provenance == Provenance::kSilver &&
             payload.provenance == Provenance::kGold) {
    slot = std::move(payload);
  }
}

std::optional<uint32_t> CompiledMatcher::Child(uint32_t node,
                                               const std::string &token) const {
  const auto &children = nodes_[node].children;
  auto it = children.find(token);
  if (it == children.end()) return std::nullopt;
  return it->second;
}

const CompiledMatcher::Payload *CompiledMatcher::Lookup(
    const std::vector<std::string> &pattern) const {
  uint32_t node = 0;
  for (const std::string &token : pattern) {
    auto child = Child(node, token);
    if (!child) return nullptr;
    node = *child;
  }
  const auto &payload = nodes_[node].payload;
  return payload ? &*payload : nullptr;
}

std::vector<EntitySpan> CompiledMatcher::Match(const Sentence &sentence) const {
  std::vector<EntitySpan> spans;
  const size_t n = sentence.tokens.size();
  if (n == 0 || accepting_states_ == 0) return spans;

  std::vector<std::string> normalized;
  normalized.reserve(n);
  for (const Token &token : sentence.tokens) {
    normalized.push_back(options_.case_sensitive ? token.text
                                                 : utf8::FoldCase(token.text));
  }

  size_t start = 0;
  while (start < n) {
    // Longest accepted path from `start` that passes the filter.
    size_t best_end = start;
    const Payload *best = nullptr;
    uint32_t node = 0;
    for (size_t i = start; i < n; ++i) {
      auto child = Child(node, normalized[i]);
      if (!child) break;
      node = *child;
      const auto &payload = nodes_[node].payload;
      if (payload &&
          (!options_.pos_filter || PassesPosFilter(sentence, start, i + 1))) {
        best_end = i + 1;
        best = &*payload;
      }
    }
    if (best == nullptr) {
      ++start;
      continue;
    }
    EntitySpan span;
    span.start = start;
    span.end = best_end;
    span.type = best->entity_type;
    span.source = best->provenance == Provenance::kGold
                      ? SpanSource::kGoldSeed
                      : SpanSource::kSilverSeed;
    span.score = 1.0;
    spans.push_back(std::move(span));
    start = best_end;
  }
  return spans;
}

SentenceSpans AnnotateHealth(const std::vector<Sentence> &sentences,
                             const CompiledMatcher &matcher, int workers) {
  SentenceSpans result(sentences.size());
  ParallelFor(sentences.size(), workers,
              [&](size_t i) { result[i] = matcher.Match(sentences[i]); });
  return result;
}

}  // namespace coronaner

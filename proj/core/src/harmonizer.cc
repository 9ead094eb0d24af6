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

#include "coronaner/harmonizer.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "coronaner/error.h"
#include "coronaner/unicode.h"

namespace coronaner {

namespace {

bool ByPosition(const EntitySpan &a, const EntitySpan &b) {
  return std::tie(a.start, a.end) < std::tie(b.start, b.end);
}

void CheckInternal(const std::vector<EntitySpan> &spans, const char *name) {
  std::vector<EntitySpan> sorted = spans;
  std::stable_sort(sorted.begin(), sorted.end(), ByPosition);
  if (!IsSortedNonOverlapping(sorted)) {
    throw Error(std::string(name) +
                " spans overlap or are empty; resolve them before harmonizing");
  }
}

int SourceRank(SpanSource source) {
  switch (source) {
    case SpanSource::kGoldSeed:
      return 0;
    case SpanSource::kSilverSeed:
      return 1;
    case SpanSource::kModel:
      return 2;
    case SpanSource::kExpert:
      return 3;
  }
  return 3;
}

}  // namespace

HarmonizationPolicy HarmonizationPolicy::FromNames(
    const std::vector<std::string> &names) {
  if (names.size() != 2) {
    throw ConfigError("harmonization priority must name HEALTH and GENERIC");
  }
  HarmonizationPolicy policy;
  for (size_t i = 0; i < 2; ++i) {
    std::string name = utf8::AsciiUpper(names[i]);
    if (name == "HEALTH") {
      policy.pass_priority[i] = AnnotationPass::kHealth;
    } else if (name == "GENERIC") {
      policy.pass_priority[i] = AnnotationPass::kGeneric;
    } else {
      throw ConfigError("unknown annotation pass " + names[i]);
    }
  }
  if (policy.pass_priority[0] == policy.pass_priority[1]) {
    throw ConfigError("harmonization priority must name HEALTH and GENERIC");
  }
  return policy;
}

std::vector<EntitySpan> Harmonize(const std::vector<EntitySpan> &health,
                                  const std::vector<EntitySpan> &generic,
                                  const HarmonizationPolicy &policy,
                                  HarmonizeStats *stats) {
  CheckInternal(health, "health");
  CheckInternal(generic, "generic");

  bool health_first = policy.pass_priority[0] == AnnotationPass::kHealth;
  const auto &winners = health_first ? health : generic;
  const auto &losers = health_first ? generic : health;

  std::vector<EntitySpan> merged = winners;
  size_t dropped = 0;
  for (const EntitySpan &span : losers) {
    bool conflict = std::any_of(
        winners.begin(), winners.end(),
        [&](const EntitySpan &winner) { return winner.Overlaps(span); });
    if (conflict) {
      ++dropped;
    } else {
      merged.push_back(span);
    }
  }
  std::stable_sort(merged.begin(), merged.end(), ByPosition);

  if (stats != nullptr) {
    size_t kept_losers = losers.size() - dropped;
    if (health_first) {
      stats->kept_health += health.size();
      stats->kept_generic += kept_losers;
      stats->dropped_generic += dropped;
    } else {
      stats->kept_generic += generic.size();
      stats->kept_health += kept_losers;
      stats->dropped_health += dropped;
    }
  }
  return merged;
}

bool OutranksWithinPass(const EntitySpan &a, const EntitySpan &b) {
  int rank_a = SourceRank(a.source);
  int rank_b = SourceRank(b.source);
  if (rank_a != rank_b) return rank_a < rank_b;
  if (a.length() != b.length()) return a.length() > b.length();
  if (a.start != b.start) return a.start < b.start;
  return a.type < b.type;
}

size_t ResolveOverlaps(std::vector<EntitySpan> *spans) {
  std::vector<EntitySpan> ranked = *spans;
  std::stable_sort(ranked.begin(), ranked.end(), OutranksWithinPass);
  std::vector<EntitySpan> kept;
  for (EntitySpan &span : ranked) {
    bool conflict =
        std::any_of(kept.begin(), kept.end(),
                    [&](const EntitySpan &k) { return k.Overlaps(span); });
    if (!conflict) kept.push_back(std::move(span));
  }
  std::stable_sort(kept.begin(), kept.end(), ByPosition);
  size_t dropped = spans->size() - kept.size();
  *spans = std::move(kept);
  return dropped;
}

}  // namespace coronaner

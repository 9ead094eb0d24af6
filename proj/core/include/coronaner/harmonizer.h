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

// Conflict resolution between the health (seed) pass and the generic
// (model) pass of one sentence.

#ifndef CORONANER_HARMONIZER_H_
#define CORONANER_HARMONIZER_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "coronaner/bio.h"
#include "coronaner/span.h"

namespace coronaner {

enum class AnnotationPass { kHealth, kGeneric };

struct HarmonizationPolicy {
  // Earlier passes win. Any span of a lower-priority pass sharing a token
  // with a kept span of a higher-priority pass is dropped whole.
  std::array<AnnotationPass, 2> pass_priority = {AnnotationPass::kHealth,
                                                 AnnotationPass::kGeneric};

  // Parses "HEALTH" / "GENERIC" names, highest priority first.
  static HarmonizationPolicy FromNames(const std::vector<std::string> &names);
};

struct HarmonizeStats {
  size_t kept_health = 0;
  size_t kept_generic = 0;
  size_t dropped_health = 0;
  size_t dropped_generic = 0;
};

// Merges both passes into one sorted, non-overlapping list. Spans of the
// winning pass are all kept; spans of the other pass survive iff they are
// disjoint from every winning span. Throws Error if either input overlaps
// internally.
std::vector<EntitySpan> Harmonize(const std::vector<EntitySpan> &health,
                                  const std::vector<EntitySpan> &generic,
                                  const HarmonizationPolicy &policy = {},
                                  HarmonizeStats *stats = nullptr);

// Within-pass ordering: GOLD_SEED > SILVER_SEED > MODEL > EXPERT, then the
// longer span, then the smaller start. Returns true if `a` beats `b`.
bool OutranksWithinPass(const EntitySpan &a, const EntitySpan &b);

// Reduces an arbitrary span list to a sorted non-overlapping one by greedily
// keeping spans in OutranksWithinPass order. Returns the number dropped.
size_t ResolveOverlaps(std::vector<EntitySpan> *spans);

}  // namespace coronaner

#endif  // CORONANER_HARMONIZER_H_

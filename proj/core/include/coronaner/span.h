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

#ifndef CORONANER_SPAN_H_
#define CORONANER_SPAN_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coronaner {

enum class SpanSource { kGoldSeed, kSilverSeed, kModel, kExpert };

// Half-open token interval [start, end) within one sentence.
struct EntitySpan {
  size_t start = 0;
  size_t end = 0;
  std::string type;
  SpanSource source = SpanSource::kExpert;
  std::optional<double> score;

  size_t length() const { return end - start; }
  bool Overlaps(const EntitySpan &other) const {
    return start < other.end && other.start < end;
  }

  bool operator==(const EntitySpan &other) const = default;
};

// Span lists aligned index-by-index with a sentence list.
using SentenceSpans = std::vector<std::vector<EntitySpan>>;

inline std::string_view SpanSourceName(SpanSource source) {
  switch (source) {
    case SpanSource::kGoldSeed:
      return "GOLD_SEED";
    case SpanSource::kSilverSeed:
      return "SILVER_SEED";
    case SpanSource::kModel:
      return "MODEL";
    case SpanSource::kExpert:
      return "EXPERT";
  }
  return "EXPERT";
}

// Parses "GOLD_SEED", "SILVER_SEED", "MODEL" or "EXPERT".
inline std::optional<SpanSource> ParseSpanSource(std::string_view name) {
  for (SpanSource source : {SpanSource::kGoldSeed, SpanSource::kSilverSeed,
                            SpanSource::kModel, SpanSource::kExpert}) {
    if (SpanSourceName(source) == name) return source;
  }
  return std::nullopt;
}

// True if spans are sorted by start and no two share a token.
inline bool IsSortedNonOverlapping(const std::vector<EntitySpan> &spans) {
  for (size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].start >= spans[i].end) return false;
    if (i > 0 && spans[i].start < spans[i - 1].end) return false;
  }
  return true;
}

}  // namespace coronaner

#endif  // CORONANER_SPAN_H_

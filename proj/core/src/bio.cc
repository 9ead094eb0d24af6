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

#include "coronaner/bio.h"

#include <algorithm>

namespace coronaner {

namespace {

// Whether `label` may follow `previous` (nullopt at sentence start).
bool ContinuesSpan(const std::optional<BioLabel> &previous,
                   const BioLabel &label) {
  return previous && previous->tag != BioLabel::kOutside &&
         previous->type == label.type;
}

BioLabel ParseOrThrow(const std::string &label, size_t index) {
  auto parsed = ParseBioLabel(label);
  if (!parsed) {
    throw BioError(index, "malformed label '" + label + "' at index " +
                              std::to_string(index));
  }
  return *parsed;
}

}  // namespace

std::optional<BioLabel> ParseBioLabel(std::string_view label) {
  if (label == "O") return BioLabel{};
  if (label.size() < 3 || label[1] != '-') return std::nullopt;
  BioLabel parsed;
  if (label[0] == 'B') {
    parsed.tag = BioLabel::kBegin;
  } else if (label[0] == 'I') {
    parsed.tag = BioLabel::kInside;
  } else {
    return std::nullopt;
  }
  parsed.type = std::string(label.substr(2));
  return parsed;
}

std::vector<std::string> SpansToBio(size_t token_count,
                                    const std::vector<EntitySpan> &spans) {
  std::vector<std::string> labels(token_count, "O");
  std::vector<bool> used(token_count, false);
  for (size_t s = 0; s < spans.size(); ++s) {
    const EntitySpan &span = spans[s];
    if (span.start >= span.end || span.end > token_count) {
      throw BioError(s, "span [" + std::to_string(span.start) + "," +
                            std::to_string(span.end) + ") out of bounds for " +
                            std::to_string(token_count) + " tokens");
    }
    if (span.type.empty()) throw BioError(s, "span without entity type");
    for (size_t i = span.start; i < span.end; ++i) {
      if (used[i]) {
        throw BioError(s, "overlapping spans at token " + std::to_string(i));
      }
      used[i] = true;
      labels[i] = (i == span.start ? "B-" : "I-") + span.type;
    }
  }
  return labels;
}

std::vector<EntitySpan> BioToSpans(const std::vector<std::string> &labels,
                                   bool lenient) {
  std::vector<EntitySpan> spans;
  std::optional<BioLabel> previous;
  for (size_t i = 0; i < labels.size(); ++i) {
    BioLabel label = ParseOrThrow(labels[i], i);
    if (label.tag == BioLabel::kInside && !ContinuesSpan(previous, label)) {
      if (!lenient) {
        throw BioError(i, "invalid transition to " + labels[i] +
                              " at index " + std::to_string(i));
      }
      label.tag = BioLabel::kBegin;
    }
    if (label.tag == BioLabel::kBegin) {
      EntitySpan span;
      span.start = i;
      span.end = i + 1;
      span.type = label.type;
      spans.push_back(std::move(span));
    } else if (label.tag == BioLabel::kInside) {
      spans.back().end = i + 1;
    }
    previous = std::move(label);
  }
  return spans;
}

size_t RepairBio(std::vector<std::string> *labels) {
  size_t repaired = 0;
  std::optional<BioLabel> previous;
  for (size_t i = 0; i < labels->size(); ++i) {
    BioLabel label = ParseOrThrow((*labels)[i], i);
    if (label.tag == BioLabel::kInside && !ContinuesSpan(previous, label)) {
      label.tag = BioLabel::kBegin;
      (*labels)[i] = "B-" + label.type;
      ++repaired;
    }
    previous = std::move(label);
  }
  return repaired;
}

}  // namespace coronaner

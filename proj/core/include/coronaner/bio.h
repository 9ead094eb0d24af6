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

// BIO label encoding. "B-TYPE" opens a span, "I-TYPE" continues a span of
// the same type, "O" is outside any span.

#ifndef CORONANER_BIO_H_
#define CORONANER_BIO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coronaner/error.h"
#include "coronaner/span.h"

namespace coronaner {

// Invalid BIO sequence. index is the 0-based label position.
class BioError : public Error {
 public:
  BioError(size_t index, const std::string &message)
      : Error(message), index_(index) {}
  size_t index() const { return index_; }

 private:
  size_t index_;
};

struct BioLabel {
  enum Tag { kOutside, kBegin, kInside };
  Tag tag = kOutside;
  std::string type;  // empty for kOutside
};

// Parses "O", "B-X" or "I-X" with X nonempty.
std::optional<BioLabel> ParseBioLabel(std::string_view label);

// Labels for `token_count` tokens. Spans must be within bounds and
// non-overlapping; they need not be sorted. Throws BioError otherwise.
std::vector<std::string> SpansToBio(size_t token_count,
                                    const std::vector<EntitySpan> &spans);

// Decodes labels into spans sorted by start; source is left as kExpert.
// Strict mode rejects "I-X" not preceded by "B-X"/"I-X". Lenient mode
// repairs such a label to "B-X". Malformed labels are rejected in both
// modes.
std::vector<EntitySpan> BioToSpans(const std::vector<std::string> &labels,
                                   bool lenient = false);

// Rewrites repairable transitions in place (lenient decoding applied to the
// labels themselves). Returns the number of repaired labels.
size_t RepairBio(std::vector<std::string> *labels);

}  // namespace coronaner

#endif  // CORONANER_BIO_H_

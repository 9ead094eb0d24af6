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

// Reference implementations used as test oracles. They are deliberately
// naive and share no code with the library beyond plain data types.

#ifndef CORONANER_TESTS_TESTING_ORACLES_H_
#define CORONANER_TESTS_TESTING_ORACLES_H_

#include <optional>
#include <string>
#include <vector>

#include "coronaner/corpus_io.h"
#include "coronaner/evaluation.h"
#include "coronaner/gazetteer.h"
#include "coronaner/seed_store.h"
#include "coronaner/span.h"
#include "coronaner/text.h"

namespace coronaner {
namespace testing {

// Enumerates every (start, seed) pair, then repeatedly takes the leftmost
// start, the longest match there and GOLD over SILVER, resuming after the
// accepted span. Seed surfaces must be space-separated words; folding is
// ASCII lower-casing.
std::vector<EntitySpan> BruteForceMatch(const std::vector<SeedEntry> &seeds,
                                        const Sentence &sentence,
                                        const MatchOptions &options = {});

// Health spans kept; a generic span survives iff no token index it covers
// is covered by any health span.
std::vector<EntitySpan> BruteForceHarmonize(
    const std::vector<EntitySpan> &health,
    const std::vector<EntitySpan> &generic);

// Expected lexicon contents after adding all of `entries` in any order, or
// nullopt when two GOLD entries disagree on the type.
std::optional<std::vector<SeedEntry>> ReferenceMerge(
    const std::vector<SeedEntry> &entries);

struct Counts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
};

// Per-type exact-match counts via pairwise comparison with a used flag.
std::map<std::string, Counts> RecountMatches(const SpansById &gold,
                                             const SpansById &pred);

double TwoPassMean(const std::vector<double> &values);
double TwoPassSampleStd(const std::vector<double> &values);

// Replaces the label at seed % size with an I- label whose type differs
// from its predecessor. Returns nullopt for an empty sequence.
std::optional<std::vector<std::string>> MutateToInvalid(
    std::vector<std::string> labels, size_t seed);

// True iff the sequence is valid strict BIO, checked transition by
// transition.
bool IsValidBio(const std::vector<std::string> &labels);

}  // namespace testing
}  // namespace coronaner

#endif  // CORONANER_TESTS_TESTING_ORACLES_H_

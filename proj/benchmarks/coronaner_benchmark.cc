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

#include <random>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "coronaner/bio.h"
#include "coronaner/gazetteer.h"
#include "coronaner/harmonizer.h"
#include "coronaner/seed_store.h"
#include "coronaner/text.h"

namespace coronaner {
namespace {

const std::vector<std::string> kWords = {
    "covid",  "virus", "fever",  "cough", "lung",   "care",    "home",
    "spread", "case",  "mask",   "test",  "ward",   "patient", "nurse",
    "health", "delta", "strain", "wave",  "county", "vaccine"};

const std::vector<std::string> kTypes = {"CORONAVIRUS", "DISEASE_OR_SYNDROME",
                                         "SIGN_OR_SYMPTOM", "IMMUNE_RESPONSE",
                                         "GROUP"};

SeedLexicon MakeLexicon(size_t seeds, std::mt19937_64 &rng) {
  std::uniform_int_distribution<size_t> word(0, kWords.size() - 1);
  std::uniform_int_distribution<size_t> type(0, kTypes.size() - 1);
  std::uniform_int_distribution<size_t> length(1, 4);
  SeedLexicon lexicon;
  for (size_t i = 0; i < seeds; ++i) {
    std::string surface;
    for (size_t n = length(rng); n > 0; --n) {
      if (!surface.empty()) surface += ' ';
      surface += kWords[word(rng)];
    }
    surface += std::to_string(i % 97);
    lexicon.Add({surface, NormalizeSurface(surface), kTypes[type(rng)],
                 Provenance::kSilver, "bench"});
  }
  return lexicon;
}

std::string MakeText(size_t tokens, std::mt19937_64 &rng) {
  std::uniform_int_distribution<size_t> word(0, kWords.size() - 1);
  std::uniform_int_distribution<size_t> suffix(0, 96);
  std::string text;
  for (size_t i = 0; i < tokens; ++i) {
    if (!text.empty()) text += ' ';
    text += kWords[word(rng)];
    if (i % 3 == 0) text += std::to_string(suffix(rng));
    if (i % 17 == 16) text += ".";
  }
  return text;
}

void BM_CompileLexicon(benchmark::State &state) {
  std::mt19937_64 rng(1);
  SeedLexicon lexicon = MakeLexicon(state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CompiledMatcher::Compile(lexicon));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CompileLexicon)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_MatchSentence(benchmark::State &state) {
  std::mt19937_64 rng(2);
  CompiledMatcher matcher =
      CompiledMatcher::Compile(MakeLexicon(state.range(0), rng));
  Sentence sentence;
  sentence.sent_id = "b:0";
  sentence.text = MakeText(40, rng);
  sentence.tokens = Tokenize(sentence.text);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matcher.Match(sentence));
  }
  state.SetItemsProcessed(state.iterations() * sentence.tokens.size());
}
BENCHMARK(BM_MatchSentence)->Arg(1000)->Arg(100000);

void BM_PrepareDocument(benchmark::State &state) {
  std::mt19937_64 rng(3);
  Document document;
  document.doc_id = "b";
  document.body = MakeText(state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SentencesFromDocument(document));
  }
  state.SetBytesProcessed(state.iterations() * document.body.size());
}
BENCHMARK(BM_PrepareDocument)->Arg(200)->Arg(5000);

void BM_Harmonize(benchmark::State &state) {
  std::vector<EntitySpan> health;
  std::vector<EntitySpan> generic;
  for (size_t i = 0; i + 3 < static_cast<size_t>(state.range(0)); i += 4) {
    health.push_back({i, i + 2, "GROUP", SpanSource::kGoldSeed, std::nullopt});
    generic.push_back({i + 1, i + 3, "ORG", SpanSource::kModel, std::nullopt});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(Harmonize(health, generic));
  }
}
BENCHMARK(BM_Harmonize)->Arg(32)->Arg(256);

void BM_BioRoundTrip(benchmark::State &state) {
  std::vector<EntitySpan> spans;
  const size_t tokens = state.range(0);
  for (size_t i = 0; i + 2 < tokens; i += 5) {
    spans.push_back({i, i + 2, "GPE", SpanSource::kExpert, std::nullopt});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(BioToSpans(SpansToBio(tokens, spans)));
  }
}
BENCHMARK(BM_BioRoundTrip)->Arg(50)->Arg(1000);

}  // namespace
}  // namespace coronaner

BENCHMARK_MAIN();

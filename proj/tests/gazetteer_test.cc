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

#include "coronaner/error.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"
#include "testing/test_util.h"

namespace coronaner {
namespace {

using testing::Rng;

SeedEntry Seed(const std::string &surface, const std::string &type,
               Provenance provenance = Provenance::kGold) {
  return {surface, NormalizeSurface(surface), type, provenance, "test"};
}

SeedLexicon Lexicon(const std::vector<SeedEntry> &entries) {
  SeedLexicon lexicon;
  for (const SeedEntry &entry : entries) lexicon.Add(entry);
  return lexicon;
}

Sentence Make(const std::string &text) {
  Sentence sentence;
  sentence.sent_id = "s";
  sentence.text = text;
  sentence.tokens = Tokenize(text);
  return sentence;
}

TEST(CompiledMatcherTest, SingleHitCaseFolded) {
  CompiledMatcher matcher =
      CompiledMatcher::Compile(Lexicon({Seed("corona", "CORONAVIRUS")}));
  std::vector<EntitySpan> spans = matcher.Match(Make("The Corona pandemic"));
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0], (EntitySpan{1, 2, "CORONAVIRUS", SpanSource::kGoldSeed, 1.0}));
}

TEST(CompiledMatcherTest, LongestWins) {
  CompiledMatcher matcher = CompiledMatcher::Compile(
      Lexicon({Seed("loss", "SIGN_OR_SYMPTOM"),
               Seed("loss of taste", "SIGN_OR_SYMPTOM")}));
  std::vector<EntitySpan> spans = matcher.Match(Make("sudden loss of taste"));
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].start, 1u);
  EXPECT_EQ(spans[0].end, 4u);
}

TEST(CompiledMatcherTest, FallsBackToShorterPrefix) {
  CompiledMatcher matcher = CompiledMatcher::Compile(
      Lexicon({Seed("loss", "SIGN_OR_SYMPTOM"),
               Seed("loss of taste", "SIGN_OR_SYMPTOM")}));
  std::vector<EntitySpan> spans = matcher.Match(Make("loss of smell"));
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].end, 1u);
}

TEST(CompiledMatcherTest, EmptySentence) {
  CompiledMatcher matcher =
      CompiledMatcher::Compile(Lexicon({Seed("corona", "CORONAVIRUS")}));
  EXPECT_TRUE(matcher.Match(Make("")).empty());
}

TEST(CompiledMatcherTest, EmptyLexicon) {
  std::vector<std::string> warnings;
  CompiledMatcher matcher = CompiledMatcher::Compile(SeedLexicon{}, {}, &warnings);
  EXPECT_EQ(matcher.accepting_states(), 0u);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_TRUE(matcher.Match(Make("corona")).empty());
}

TEST(CompiledMatcherTest, TokenBoundarySafety) {
  CompiledMatcher matcher =
      CompiledMatcher::Compile(Lexicon({Seed("Corona", "CORONAVIRUS")}));
  EXPECT_TRUE(matcher.Match(Make("Coronavirus cases")).empty());
}

TEST(CompiledMatcherTest, SilverSource) {
  CompiledMatcher matcher = CompiledMatcher::Compile(
      Lexicon({Seed("delta variant", "CORONAVIRUS", Provenance::kSilver)}));
  std::vector<EntitySpan> spans = matcher.Match(Make("the Delta variant."));
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].source, SpanSource::kSilverSeed);
}

TEST(CompiledMatcherTest, CaseSensitiveMode) {
  MatchOptions options;
  options.case_sensitive = true;
  CompiledMatcher matcher = CompiledMatcher::Compile(
      Lexicon({Seed("Corona", "CORONAVIRUS")}), options);
  EXPECT_TRUE(matcher.Match(Make("corona rises")).empty());
  EXPECT_EQ(matcher.Match(Make("Corona rises")).size(), 1u);
}

TEST(CompiledMatcherTest, PosFilter) {
  MatchOptions options;
  options.pos_filter = true;
  CompiledMatcher matcher = CompiledMatcher::Compile(
      Lexicon({Seed("cough", "SIGN_OR_SYMPTOM")}), options);
  Sentence verb = Make("they cough");
  verb.tokens[1].pos = "VBP";
  EXPECT_TRUE(matcher.Match(verb).empty());
  Sentence noun = Make("a cough");
  noun.tokens[1].pos = "NN";
  EXPECT_EQ(matcher.Match(noun).size(), 1u);
  EXPECT_EQ(matcher.Match(Make("a cough")).size(), 1u);  // untagged
}

TEST(CompiledMatcherTest, ReplaysLargeLexicon) {
  Rng rng(41);
  SeedLexicon lexicon;
  const std::string letters = "abcdefghij";
  while (lexicon.size() < 10000) {
    size_t words = testing::Uniform(rng, 1, 4);
    std::string surface;
    for (size_t w = 0; w < words; ++w) {
      if (w > 0) surface += ' ';
      for (int c = 0; c < 3; ++c) {
        surface += letters[testing::Uniform(rng, 0, letters.size() - 1)];
      }
    }
    try {
      lexicon.Add(Seed(surface, testing::Pick(rng, testing::HealthTypes()),
                       testing::Coin(rng) ? Provenance::kGold
                                          : Provenance::kSilver));
    } catch (const Error &) {
      // Conflicting gold draw; skip it.
    }
  }
  CompiledMatcher matcher = CompiledMatcher::Compile(lexicon);
  EXPECT_EQ(matcher.accepting_states(), lexicon.size());
  for (const SeedEntry &entry : lexicon.entries()) {
    const CompiledMatcher::Payload *payload = matcher.Lookup(entry.norm_tokens);
    ASSERT_NE(payload, nullptr);
    EXPECT_EQ(payload->entity_type, entry.entity_type);
    EXPECT_EQ(payload->provenance, entry.provenance);
    std::vector<EntitySpan> spans = matcher.Match(Make(entry.surface));
    ASSERT_EQ(spans.size(), 1u);
    EXPECT_EQ(spans[0].end, entry.norm_tokens.size());
  }
  EXPECT_EQ(matcher.Lookup({"zzz"}), nullptr);
}

TEST(CompiledMatcherTest, OrderIndependentCompile) {
  Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    std::vector<SeedEntry> entries =
        testing::RandomLexicon(rng, 40).entries();
    SeedLexicon forward = Lexicon(entries);
    std::reverse(entries.begin(), entries.end());
    SeedLexicon backward = Lexicon(entries);
    CompiledMatcher a = CompiledMatcher::Compile(forward);
    CompiledMatcher b = CompiledMatcher::Compile(backward);
    for (int k = 0; k < 20; ++k) {
      Sentence sentence = testing::RandomSentence(rng, 20);
      ASSERT_EQ(a.Match(sentence), b.Match(sentence));
    }
  }
}

TEST(CompiledMatcherTest, AgreesWithBruteForce) {
  Rng rng(43);
  for (int i = 0; i < 2000; ++i) {
    MatchOptions options;
    options.case_sensitive = testing::Coin(rng, 0.2);
    options.pos_filter = testing::Coin(rng, 0.2);
    SeedLexicon lexicon = testing::RandomLexicon(rng, 50);
    Sentence sentence = testing::RandomSentence(rng, 30, options.pos_filter);
    CompiledMatcher matcher = CompiledMatcher::Compile(lexicon, options);
    std::vector<EntitySpan> got = matcher.Match(sentence);
    std::vector<EntitySpan> want =
        testing::BruteForceMatch(lexicon.entries(), sentence, options);
    ASSERT_EQ(got, want) << "sentence: " << sentence.text
                         << "\ngot:  " << testing::DescribeSpans(got)
                         << "\nwant: " << testing::DescribeSpans(want);
    ASSERT_TRUE(IsSortedNonOverlapping(got));
  }
}

TEST(CompiledMatcherTest, CasingInvariance) {
  Rng rng(44);
  for (int i = 0; i < 500; ++i) {
    SeedLexicon lexicon = testing::RandomLexicon(rng, 30);
    CompiledMatcher matcher = CompiledMatcher::Compile(lexicon);
    Sentence sentence = testing::RandomSentence(rng, 20);
    Sentence upper = sentence;
    for (Token &token : upper.tokens) {
      std::transform(token.text.begin(), token.text.end(), token.text.begin(),
                     [](unsigned char c) { return std::toupper(c); });
    }
    ASSERT_EQ(matcher.Match(sentence), matcher.Match(upper));
  }
}

TEST(AnnotateHealthTest, EqualsPerSentenceLoop) {
  Rng rng(45);
  SeedLexicon lexicon = testing::RandomLexicon(rng, 50);
  CompiledMatcher matcher = CompiledMatcher::Compile(lexicon);
  std::vector<Sentence> corpus;
  for (int i = 0; i < 300; ++i) corpus.push_back(testing::RandomSentence(rng, 25));
  SentenceSpans sequential;
  for (const Sentence &sentence : corpus) sequential.push_back(matcher.Match(sentence));
  EXPECT_EQ(AnnotateHealth(corpus, matcher, 1), sequential);
  EXPECT_EQ(AnnotateHealth(corpus, matcher, 4), sequential);
}

TEST(AnnotateHealthTest, ZeroMatchesKeepsSlots) {
  CompiledMatcher matcher =
      CompiledMatcher::Compile(Lexicon({Seed("corona", "CORONAVIRUS")}));
  SentenceSpans spans = AnnotateHealth({Make("a b"), Make("c")}, matcher);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_TRUE(spans[0].empty());
  EXPECT_TRUE(spans[1].empty());
}

}  // namespace
}  // namespace coronaner

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

#include "coronaner/generic_annotation.h"

#include <sstream>

#include "coronaner/error.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/fake_sparql.h"
#include "testing/test_util.h"

namespace coronaner {
namespace {

using ::testing::HasSubstr;
using testing::FakeKnowledgeBase;
using testing::Rng;

Sentence Make(const std::string &id, const std::string &text) {
  Sentence sentence;
  sentence.sent_id = id;
  sentence.text = text;
  sentence.tokens = Tokenize(text);
  return sentence;
}

GenericImport LoadString(const std::string &text,
                         const std::vector<Sentence> &sentences,
                         bool lenient = false) {
  std::istringstream in(text);
  return LoadGenericSpans(in, "spans.jsonl", sentences, lenient);
}

const std::vector<Sentence> &Corpus() {
  static const std::vector<Sentence> corpus = {
      Make("s0", "Moderna opened a lab today"),
      Make("s1", "Berlin and asdfgh"),
  };
  return corpus;
}

TEST(LoadGenericSpansTest, ImportsRecord) {
  GenericImport import = LoadString(
      R"({"sent_id":"s0","spans":[{"start":0,"end":2,"type":"ORG","score":0.99}]})",
      Corpus());
  ASSERT_EQ(import.spans.size(), 2u);
  ASSERT_EQ(import.spans[0].size(), 1u);
  EXPECT_EQ(import.spans[0][0],
            (EntitySpan{0, 2, "ORG", SpanSource::kModel, 0.99}));
  EXPECT_TRUE(import.spans[1].empty());
  EXPECT_EQ(import.imported, 1u);
}

TEST(LoadGenericSpansTest, OutOfBoundsStrict) {
  try {
    LoadString(R"({"sent_id":"s0","spans":[{"start":0,"end":9,"type":"ORG"}]})",
               Corpus());
    FAIL() << "out-of-bounds span accepted";
  } catch (const FormatError &e) {
    EXPECT_THAT(e.what(), HasSubstr("s0"));
  }
}

TEST(LoadGenericSpansTest, LenientSkipsWithCounts) {
  GenericImport import = LoadString(
      "{\"sent_id\":\"s0\",\"spans\":[{\"start\":0,\"end\":9,\"type\":\"ORG\"},"
      "{\"start\":0,\"end\":1,\"type\":\"org\"}]}\n"
      "{\"sent_id\":\"nope\",\"spans\":[]}\n",
      Corpus(), /*lenient=*/true);
  EXPECT_EQ(import.imported, 1u);
  EXPECT_EQ(import.skipped_out_of_bounds, 1u);
  EXPECT_EQ(import.skipped_unknown_sentence, 1u);
  EXPECT_EQ(import.spans[0][0].type, "ORG");
}

TEST(LoadGenericSpansTest, UnknownSentenceStrict) {
  EXPECT_THROW(LoadString(R"({"sent_id":"nope","spans":[]})", Corpus()),
               FormatError);
}

TEST(LoadGenericSpansTest, UnknownTypeListsGenericNames) {
  try {
    LoadString(R"({"sent_id":"s0","spans":[{"start":0,"end":1,"type":"CORONAVIRUS"}]})",
               Corpus(), /*lenient=*/true);
    FAIL() << "health type accepted as generic";
  } catch (const ConfigError &e) {
    for (const std::string &name : testing::GenericTypes()) {
      EXPECT_THAT(e.what(), HasSubstr(name));
    }
  }
}

TEST(LoadGenericSpansTest, EmptyFile) {
  GenericImport import = LoadString("", Corpus());
  EXPECT_EQ(import.imported, 0u);
  EXPECT_EQ(import.spans.size(), Corpus().size());
}

TEST(LoadGenericSpansTest, SortedByStart) {
  GenericImport import = LoadString(
      R"({"sent_id":"s0","spans":[{"start":3,"end":4,"type":"ORG"},{"start":0,"end":1,"type":"ORG"}]})",
      Corpus());
  EXPECT_EQ(import.spans[0][0].start, 0u);
  EXPECT_EQ(import.spans[0][1].start, 3u);
}

TEST(RefinementRulesTest, Validation) {
  EXPECT_NO_THROW(ValidateRefinementRules({{"Q515", "GPE", 1}, {"Q5", "PERSON", 2}}));
  EXPECT_THROW(ValidateRefinementRules({{"Q515", "GPE", 1}, {"Q5", "PERSON", 1}}),
               ConfigError);
  EXPECT_THROW(ValidateRefinementRules({{"Q1", "CORONAVIRUS", 1}}), ConfigError);
  EXPECT_THROW(ValidateRefinementRules({{"", "GPE", 1}}), ConfigError);
}

TEST(RefinementRulesTest, LoadFile) {
  testing::TempDir dir;
  testing::WriteFile(dir.File("r.tsv"), "# c\nQ515\tgpe\t5\nQ5\tPERSON\t-2\n");
  std::vector<RefinementRule> rules = LoadRefinementRules(dir.File("r.tsv"));
  EXPECT_EQ(rules, (std::vector<RefinementRule>{{"Q515", "GPE", 5},
                                                {"Q5", "PERSON", -2}}));
  testing::WriteFile(dir.File("bad.tsv"), "Q515\tGPE\tfive\n");
  EXPECT_THROW(LoadRefinementRules(dir.File("bad.tsv")), FormatError);
}

class RefineSpanTest : public ::testing::Test {
 protected:
  RefineSpanTest() {
    kb_.items["berlin"] = {{"Q64", {"Q515"}}};
    kb_.items["moderna"] = {{"Q30715381", {"Q4830453", "Q19967801"}}};
  }

  FakeKnowledgeBase kb_;
  std::vector<RefinementRule> rules_ = {{"Q515", "GPE", 1},
                                        {"Q4830453", "ORG", 2},
                                        {"Q19967801", "PRODUCT", 3}};
};

TEST_F(RefineSpanTest, ConfirmsType) {
  RefinementDecision decision;
  EntitySpan span{0, 1, "GPE", SpanSource::kModel, 0.9};
  EXPECT_EQ(RefineSpan(span, Corpus()[1], kb_, rules_, &decision), span);
  EXPECT_EQ(decision.surface, "berlin");
  EXPECT_EQ(decision.item, "Q64");
  EXPECT_EQ(decision.old_type, "GPE");
  EXPECT_EQ(decision.new_type, "GPE");
}

TEST_F(RefineSpanTest, RetypesByHighestPriority) {
  std::vector<RefinementRule> rules = {{"Q4830453", "ORG", 2}};
  EntitySpan span{0, 1, "GPE", SpanSource::kModel, std::nullopt};
  EXPECT_EQ(RefineSpan(span, Corpus()[0], kb_, rules).type, "ORG");
  EXPECT_EQ(RefineSpan(span, Corpus()[0], kb_, rules_).type, "PRODUCT");
}

TEST_F(RefineSpanTest, MissLeavesSpan) {
  RefinementDecision decision;
  EntitySpan span{2, 3, "PERSON", SpanSource::kModel, std::nullopt};
  EXPECT_EQ(RefineSpan(span, Corpus()[1], kb_, rules_, &decision), span);
  EXPECT_EQ(decision.item, "MISS");
}

TEST_F(RefineSpanTest, NonModelSpansUntouched) {
  EntitySpan span{0, 1, "GPE", SpanSource::kExpert, std::nullopt};
  EXPECT_EQ(RefineSpan(span, Corpus()[0], kb_, rules_), span);
  EXPECT_TRUE(kb_.lookups.empty());
}

TEST(RefineGenericTest, EmptyRulesIsIdentity) {
  Rng rng(71);
  std::vector<Sentence> corpus;
  GenericImport import;
  for (int i = 0; i < 50; ++i) {
    corpus.push_back(testing::RandomSentence(rng, 15));
    corpus.back().sent_id = "s" + std::to_string(i);
    import.spans.push_back(testing::RandomSpans(
        rng, corpus.back().size(), testing::GenericTypes(), SpanSource::kModel));
  }
  FakeKnowledgeBase kb;
  GenericAnnotation result = RefineGeneric(corpus, import, &kb, {});
  EXPECT_EQ(result.spans, import.spans);
  EXPECT_TRUE(kb.lookups.empty());
  EXPECT_EQ(RefineGeneric(corpus, import, nullptr, {}).spans, import.spans);
}

TEST(RefineGenericTest, BoundariesFixedAndDeterministic) {
  Rng rng(72);
  std::vector<Sentence> corpus;
  GenericImport import;
  FakeKnowledgeBase kb;
  for (const std::string &word : testing::Vocabulary()) {
    std::string key = NormalizeSurface(word)[0];
    kb.items[key] = {{"Q" + key, {testing::Coin(rng) ? "Q515" : "Q5"}}};
  }
  for (int i = 0; i < 100; ++i) {
    corpus.push_back(testing::RandomSentence(rng, 15));
    corpus.back().sent_id = "s" + std::to_string(i);
    import.spans.push_back(testing::RandomSpans(
        rng, corpus.back().size(), testing::GenericTypes(), SpanSource::kModel));
  }
  std::vector<RefinementRule> rules = {{"Q515", "GPE", 1}, {"Q5", "PERSON", 2}};
  GenericAnnotation one = RefineGeneric(corpus, import, &kb, rules, 1);
  GenericAnnotation four = RefineGeneric(corpus, import, &kb, rules, 4);
  EXPECT_EQ(one.spans, four.spans);
  ASSERT_EQ(one.decisions.size(), four.decisions.size());
  for (size_t i = 0; i < one.spans.size(); ++i) {
    ASSERT_EQ(one.spans[i].size(), import.spans[i].size());
    for (size_t k = 0; k < one.spans[i].size(); ++k) {
      EXPECT_EQ(one.spans[i][k].start, import.spans[i][k].start);
      EXPECT_EQ(one.spans[i][k].end, import.spans[i][k].end);
    }
  }
  EXPECT_GT(one.retyped, 0u);
}

TEST(RefineGenericTest, RulesWithoutKnowledgeBase) {
  GenericImport import;
  import.spans.resize(Corpus().size());
  EXPECT_THROW(RefineGeneric(Corpus(), import, nullptr, {{"Q5", "PERSON", 1}}),
               ConfigError);
}

TEST(SparqlKnowledgeBaseTest, ExactLabelFromCache) {
  auto transport = std::make_shared<testing::FakeTransport>();
  SparqlClient *raw = nullptr;
  auto client = std::make_shared<SparqlClient>(
      "e", std::make_shared<SparqlCache>(), transport);
  raw = client.get();
  SparqlKnowledgeBase kb(client, "Q {label} / {surface}");
  transport->responses["Q moderna / Moderna"] = R"({"results":{"bindings":[
    {"item":{"type":"uri","value":"http://www.wikidata.org/entity/Q30715381"},
     "class":{"type":"uri","value":"http://www.wikidata.org/entity/Q4830453"},
     "label":{"type":"literal","value":"Moderna"}},
    {"item":{"type":"uri","value":"http://www.wikidata.org/entity/Q99"},
     "class":{"type":"uri","value":"http://www.wikidata.org/entity/Q5"},
     "label":{"type":"literal","value":"Moderna Inc"}}]}})";
  std::vector<KbItem> items = kb.Lookup("moderna", "Moderna");
  ASSERT_EQ(items.size(), 1u);
  EXPECT_EQ(items[0].id, "Q30715381");
  EXPECT_EQ(items[0].classes, std::vector<std::string>{"Q4830453"});
  kb.Lookup("moderna", "Moderna");
  EXPECT_EQ(raw->network_requests(), 1u);
}

TEST(SparqlKnowledgeBaseTest, EscapesLiterals) {
  auto transport = std::make_shared<testing::FakeTransport>();
  transport->responses["\"a\\\"b\\\\c\""] = R"({"results":{"bindings":[]}})";
  SparqlKnowledgeBase kb(std::make_shared<SparqlClient>(
                             "e", std::make_shared<SparqlCache>(), transport),
                         "\"{label}\"");
  EXPECT_TRUE(kb.Lookup("a\"b\\c", "x").empty());
}

}  // namespace
}  // namespace coronaner

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

#include "coronaner/corpus_io.h"

#include <sstream>

#include "coronaner/bio.h"
#include "coronaner/error.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/test_util.h"

namespace coronaner {
namespace {

using ::testing::HasSubstr;
using testing::Rng;

std::vector<Document> ReadString(const std::string &text) {
  std::istringstream in(text);
  return ReadJsonlCorpus(in, "corpus.jsonl");
}

std::vector<LabeledSentence> ReadConllString(const std::string &text,
                                             bool lenient = false) {
  std::istringstream in(text);
  return ReadConll(in, "tags.conll", lenient);
}

TEST(JsonlCorpusTest, MinimalLine) {
  std::vector<Document> documents = ReadString(R"({"doc_id":"d1","body":"x"})");
  ASSERT_EQ(documents.size(), 1u);
  EXPECT_EQ(documents[0].doc_id, "d1");
  EXPECT_EQ(documents[0].body, "x");
  EXPECT_EQ(documents[0].title, "");
  EXPECT_FALSE(documents[0].published_at.has_value());
  EXPECT_EQ(documents[0].language, "en");
}

TEST(JsonlCorpusTest, DuplicateDocId) {
  try {
    ReadString("{\"doc_id\":\"d1\",\"body\":\"a\"}\n"
               "{\"doc_id\":\"d1\",\"body\":\"b\"}\n");
    FAIL() << "duplicate accepted";
  } catch (const FormatError &e) {
    EXPECT_THAT(e.what(), HasSubstr("duplicate doc_id d1"));
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(JsonlCorpusTest, MalformedLineNamesLine) {
  try {
    ReadString("{\"doc_id\":\"d1\",\"body\":\"a\"}\n\n{broken\n");
    FAIL() << "malformed line accepted";
  } catch (const FormatError &e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_THAT(e.what(), HasSubstr("corpus.jsonl:3"));
  }
}

TEST(JsonlCorpusTest, MissingBody) {
  EXPECT_THROW(ReadString(R"({"doc_id":"d1"})"), FormatError);
  EXPECT_THROW(ReadString(R"({"doc_id":"","body":"x"})"), FormatError);
  EXPECT_THROW(ReadString(R"({"doc_id":3,"body":"x"})"), FormatError);
}

TEST(JsonlCorpusTest, CanonicalWriteIsByteStable) {
  std::string canonical =
      "{\"doc_id\":\"d1\",\"title\":\"T\",\"body\":\"Corona \\\"news\\\" ü\","
      "\"published_at\":\"2020-03-01\",\"language\":\"en\"}\n"
      "{\"doc_id\":\"d2\",\"title\":\"\",\"body\":\"x\",\"language\":\"de\"}\n";
  std::ostringstream out;
  WriteJsonlCorpus(ReadString(canonical), out);
  EXPECT_EQ(out.str(), canonical);
}

TEST(JsonlCorpusTest, RoundTripRandomCorpora) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    std::vector<Document> documents = testing::RandomDocuments(rng, 8);
    std::ostringstream out;
    WriteJsonlCorpus(documents, out);
    ASSERT_EQ(ReadString(out.str()), documents);
  }
}

TEST(ConllTest, WriteFormat) {
  std::ostringstream out;
  WriteConll({{{"Delta", "spreads"}, {"B-CORONAVIRUS", "O"}}}, out);
  EXPECT_EQ(out.str(), "Delta\tB-CORONAVIRUS\nspreads\tO\n\n");
}

TEST(ConllTest, ReadBack) {
  std::vector<LabeledSentence> sentences =
      ReadConllString("Delta\tB-CORONAVIRUS\nspreads\tO\n\n");
  ASSERT_EQ(sentences.size(), 1u);
  EXPECT_EQ(sentences[0],
            (LabeledSentence{{"Delta", "spreads"}, {"B-CORONAVIRUS", "O"}}));
  EXPECT_EQ(sentences[0].line, 1);
}

TEST(ConllTest, StrictRejectsInvalidTransition) {
  try {
    ReadConllString("x\tI-GPE\n\n");
    FAIL() << "invalid transition accepted";
  } catch (const FormatError &e) {
    EXPECT_THAT(e.what(), HasSubstr("invalid transition at line 1"));
  }
}

TEST(ConllTest, LenientRepairs) {
  std::vector<LabeledSentence> sentences =
      ReadConllString("x\tI-GPE\ny\tI-GPE\nz\tI-ORG\n\n", /*lenient=*/true);
  ASSERT_EQ(sentences.size(), 1u);
  EXPECT_EQ(sentences[0].labels,
            (std::vector<std::string>{"B-GPE", "I-GPE", "B-ORG"}));
}

TEST(ConllTest, RaggedWriteRejected) {
  std::ostringstream out;
  EXPECT_THROW(WriteConll({{{"a", "b"}, {"O"}}}, out), Error);
  EXPECT_THROW(WriteConll({{{"a b"}, {"O"}}}, out), Error);
  EXPECT_THROW(WriteConll({{{}, {}}}, out), Error);
}

TEST(ConllTest, RaggedFileRejected) {
  EXPECT_THROW(ReadConllString("a\tO\nb\n\n"), FormatError);
  EXPECT_THROW(ReadConllString("a\tO\tX\n\n"), FormatError);
  EXPECT_THROW(ReadConllString("a\tNOT-A-LABEL\n\n"), FormatError);
}

TEST(ConllTest, MissingFinalBlankLineAccepted) {
  EXPECT_EQ(ReadConllString("a\tO\nb\tB-GPE").size(), 1u);
}

TEST(ConllTest, RoundTripRandomCorpora) {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    std::vector<LabeledSentence> sentences =
        testing::RandomLabeledSentences(rng, 10);
    std::ostringstream out;
    WriteConll(sentences, out);
    ASSERT_EQ(ReadConllString(out.str()), sentences);
  }
}

TEST(AnnotatedJsonlTest, RoundTrip) {
  Sentence sentence;
  sentence.sent_id = "d1:0";
  sentence.text = "Corona hits Wuhan";
  sentence.tokens = Tokenize(sentence.text);
  EntitySpan health{0, 1, "CORONAVIRUS", SpanSource::kGoldSeed, 1.0};
  EntitySpan generic{2, 3, "GPE", SpanSource::kModel, std::nullopt};
  AnnotatedSentence annotated = MakeAnnotatedSentence(sentence, {health, generic});
  EXPECT_EQ(annotated.labels,
            (std::vector<std::string>{"B-CORONAVIRUS", "O", "B-GPE"}));

  std::ostringstream out;
  WriteAnnotatedJsonl({annotated}, out);
  EXPECT_EQ(out.str(),
            "{\"sent_id\":\"d1:0\",\"tokens\":[\"Corona\",\"hits\",\"Wuhan\"],"
            "\"labels\":[\"B-CORONAVIRUS\",\"O\",\"B-GPE\"],\"spans\":["
            "{\"start\":0,\"end\":1,\"type\":\"CORONAVIRUS\",\"source\":"
            "\"GOLD_SEED\",\"score\":1.0},{\"start\":2,\"end\":3,\"type\":"
            "\"GPE\",\"source\":\"MODEL\"}]}\n");
  std::istringstream in(out.str());
  EXPECT_EQ(ReadAnnotatedJsonl(in, "a.jsonl"),
            std::vector<AnnotatedSentence>{annotated});
}

TEST(AnnotatedJsonlTest, LabelsMustMatchSpans) {
  std::istringstream in(
      "{\"sent_id\":\"s\",\"tokens\":[\"a\"],\"labels\":[\"O\"],\"spans\":["
      "{\"start\":0,\"end\":1,\"type\":\"GPE\",\"source\":\"MODEL\"}]}\n");
  EXPECT_THROW(ReadAnnotatedJsonl(in, "a.jsonl"), FormatError);
}

TEST(CorpusFilesTest, MissingFile) {
  EXPECT_THROW(ReadJsonlCorpus("/nonexistent/corpus.jsonl"), Error);
  EXPECT_THROW(ReadConll("/nonexistent/tags.conll"), Error);
}

TEST(CorpusFilesTest, FileRoundTrip) {
  testing::TempDir dir;
  std::vector<Document> documents = {{"a", "t", "b", "2020-01-01", "en"}};
  WriteJsonlCorpus(documents, dir.File("c.jsonl"));
  EXPECT_EQ(ReadJsonlCorpus(dir.File("c.jsonl")), documents);
}

}  // namespace
}  // namespace coronaner

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

#include "testing/test_util.h"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coronaner/bio.h"

namespace coronaner {
namespace testing {

namespace fs = std::filesystem;

std::string FixturePath(const std::string &relative) {
  return (fs::path(CORONANER_FIXTURE_DIR) / relative).string();
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path);
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("coronaner_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  fs::remove_all(path_, ignored);
}

size_t Uniform(Rng &rng, size_t lo, size_t hi) {
  return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

bool Coin(Rng &rng, double p) { return std::bernoulli_distribution(p)(rng); }

const std::vector<std::string> &Vocabulary() {
  static const std::vector<std::string> words = {
      "corona", "Corona", "virus", "Delta", "delta", "variant", "loss",
      "of",     "taste",  "fever", "COVID-19",     "SARS-CoV-2", "dry",
      "cough",  "the",    "The",   "in",    "Wuhan", "mask",  "Mask",
  };
  return words;
}

const std::vector<std::string> &HealthTypes() {
  static const std::vector<std::string> types = {
      "CORONAVIRUS", "DISEASE_OR_SYNDROME", "SIGN_OR_SYMPTOM",
      "IMMUNE_RESPONSE", "GROUP"};
  return types;
}

const std::vector<std::string> &GenericTypes() {
  static const std::vector<std::string> types = {
      "PERSON",  "NORP",     "FAC",      "ORG",     "GPE",     "LOC",
      "PRODUCT", "EVENT",    "WORK_OF_ART", "LAW",  "LANGUAGE", "DATE",
      "TIME",    "PERCENT",  "MONEY",    "QUANTITY", "ORDINAL", "CARDINAL"};
  return types;
}

const std::vector<std::string> &AllTypes() {
  static const std::vector<std::string> types = [] {
    std::vector<std::string> all = HealthTypes();
    all.insert(all.end(), GenericTypes().begin(), GenericTypes().end());
    return all;
  }();
  return types;
}

Sentence RandomSentence(Rng &rng, size_t max_tokens, bool tagged) {
  static const std::vector<std::string> tags = {"NN", "NNP", "VB", "DT",
                                                "IN", "JJ", "PROPN", "NOUN"};
  Sentence sentence;
  sentence.sent_id = "s";
  size_t count = Uniform(rng, 0, max_tokens);
  for (size_t i = 0; i < count; ++i) {
    if (i > 0) sentence.text += ' ';
    Token token;
    token.text = Pick(rng, Vocabulary());
    token.char_start = sentence.text.size();
    sentence.text += token.text;
    token.char_end = sentence.text.size();
    if (tagged && Coin(rng, 0.8)) token.pos = Pick(rng, tags);
    sentence.tokens.push_back(std::move(token));
  }
  return sentence;
}

SeedLexicon RandomLexicon(Rng &rng, size_t max_seeds,
                          const std::vector<std::string> &types) {
  SeedLexicon lexicon;
  size_t count = Uniform(rng, 0, max_seeds);
  for (size_t i = 0; i < count; ++i) {
    size_t length = Uniform(rng, 1, 4);
    std::string surface;
    for (size_t w = 0; w < length; ++w) {
      if (w > 0) surface += ' ';
      surface += Pick(rng, Vocabulary());
    }
    SeedEntry entry;
    entry.surface = surface;
    entry.norm_tokens = NormalizeSurface(surface);
    entry.entity_type = Pick(rng, types);
    entry.provenance = Coin(rng, 0.3) ? Provenance::kGold : Provenance::kSilver;
    entry.source = "src" + std::to_string(Uniform(rng, 0, 3));
    try {
      lexicon.Add(std::move(entry));
    } catch (const Error &) {
      // Two gold entries disagree on the type; leave the first one.
    }
  }
  return lexicon;
}

std::vector<EntitySpan> RandomSpans(Rng &rng, size_t token_count,
                                    const std::vector<std::string> &types,
                                    SpanSource source) {
  std::vector<EntitySpan> spans;
  size_t pos = 0;
  while (pos < token_count) {
    pos += Uniform(rng, 0, 3);
    if (pos >= token_count) break;
    size_t length = Uniform(rng, 1, std::min<size_t>(4, token_count - pos));
    EntitySpan span;
    span.start = pos;
    span.end = pos + length;
    span.type = Pick(rng, types);
    span.source = source;
    if (Coin(rng)) span.score = static_cast<double>(Uniform(rng, 0, 100)) / 100;
    spans.push_back(std::move(span));
    pos += length;
  }
  return spans;
}

std::vector<EntitySpan> RandomOverlappingSpans(
    Rng &rng, size_t token_count, const std::vector<std::string> &types,
    SpanSource source, size_t max_spans) {
  std::vector<EntitySpan> spans;
  if (token_count == 0) return spans;
  size_t count = Uniform(rng, 0, max_spans);
  for (size_t i = 0; i < count; ++i) {
    EntitySpan span;
    span.start = Uniform(rng, 0, token_count - 1);
    span.end = Uniform(rng, span.start + 1,
                       std::min(token_count, span.start + 4));
    span.type = Pick(rng, types);
    span.source = source;
    spans.push_back(std::move(span));
  }
  return spans;
}

std::string RandomText(Rng &rng, size_t max_chars) {
  static const std::vector<std::string> pieces = {
      "a", "Z", "0", " ", "  ", "\t", "\n", "#", "*", ".", ",", "\"", "\\",
      "/", "ü", "é", "ß", "Ω", "Я", "中", "😷", "“", "”", "'", "{", "}",
      " ", "-", "?", "!"};
  std::string text;
  size_t count = Uniform(rng, 0, max_chars);
  for (size_t i = 0; i < count; ++i) text += Pick(rng, pieces);
  return text;
}

std::vector<Document> RandomDocuments(Rng &rng, size_t max_docs) {
  std::vector<Document> documents;
  size_t count = Uniform(rng, 0, max_docs);
  for (size_t i = 0; i < count; ++i) {
    Document document;
    document.doc_id = "doc-" + std::to_string(i) + "/" + RandomText(rng, 3);
    document.title = RandomText(rng, 10);
    document.body = RandomText(rng, 60);
    if (Coin(rng)) document.published_at = "2020-0" + std::to_string(i % 9 + 1) + "-15";
    if (Coin(rng, 0.2)) document.language = "de";
    documents.push_back(std::move(document));
  }
  return documents;
}

std::vector<LabeledSentence> RandomLabeledSentences(Rng &rng,
                                                    size_t max_sentences) {
  static const std::vector<std::string> words = {
      "Delta", "spreads", "in", "Wuhan", "SARS-CoV-2", ".", ",", "ü", "中",
      "\"", "#", "x-y", "don't"};
  std::vector<LabeledSentence> sentences;
  size_t count = Uniform(rng, 0, max_sentences);
  for (size_t i = 0; i < count; ++i) {
    LabeledSentence sentence;
    size_t length = Uniform(rng, 1, 12);
    for (size_t t = 0; t < length; ++t) {
      sentence.tokens.push_back(Pick(rng, words));
    }
    sentence.labels =
        SpansToBio(length, RandomSpans(rng, length, AllTypes(),
                                       SpanSource::kExpert));
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

std::string DescribeSpans(const std::vector<EntitySpan> &spans) {
  std::string out = "[";
  for (const EntitySpan &span : spans) {
    if (out.size() > 1) out += ", ";
    out += "(" + std::to_string(span.start) + "," + std::to_string(span.end) +
           "," + span.type + "," + std::string(SpanSourceName(span.source)) +
           ")";
  }
  return out + "]";
}

}  // namespace testing
}  // namespace coronaner

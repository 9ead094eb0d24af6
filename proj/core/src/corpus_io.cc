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

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "coronaner/bio.h"
#include "coronaner/error.h"
#include "coronaner/unicode.h"
#include "file_util.h"
#include "json.hpp"

namespace coronaner {

using nlohmann::ordered_json;

namespace {

std::string RequireString(const ordered_json &object, const char *field,
                          const std::string &name, int line, bool required) {
  auto it = object.find(field);
  if (it == object.end() || it->is_null()) {
    if (required) {
      throw FormatError(name, line,
                        std::string("missing field '") + field + "'");
    }
    return {};
  }
  if (!it->is_string()) {
    throw FormatError(name, line,
                      std::string("field '") + field + "' is not a string");
  }
  return it->get<std::string>();
}

ordered_json SpanToJson(const EntitySpan &span) {
  ordered_json out;
  out["start"] = span.start;
  out["end"] = span.end;
  out["type"] = span.type;
  out["source"] = SpanSourceName(span.source);
  if (span.score) out["score"] = *span.score;
  return out;
}

bool HasWhitespace(const std::string &text) {
  for (char c : text) {
    if (utf8::IsSpace(c)) return true;
  }
  return false;
}

}  // namespace

std::vector<Document> ReadJsonlCorpus(const std::string &path) {
  std::ifstream in = internal::OpenForRead(path);
  return ReadJsonlCorpus(in, path);
}

std::vector<Document> ReadJsonlCorpus(std::istream &in,
                                      const std::string &name) {
  std::vector<Document> documents;
  std::unordered_set<std::string> seen;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json object;
    try {
      object = ordered_json::parse(line);
    } catch (const ordered_json::exception &e) {
      throw FormatError(name, line_number, std::string("malformed JSON: ") +
                                               e.what());
    }
    if (!object.is_object()) {
      throw FormatError(name, line_number, "line is not a JSON object");
    }
    Document document;
    document.doc_id = RequireString(object, "doc_id", name, line_number, true);
    document.body = RequireString(object, "body", name, line_number, true);
    document.title = RequireString(object, "title", name, line_number, false);
    if (object.contains("published_at") && !object["published_at"].is_null()) {
      document.published_at =
          RequireString(object, "published_at", name, line_number, true);
    }
    if (object.contains("language") && !object["language"].is_null()) {
      document.language =
          RequireString(object, "language", name, line_number, true);
    }
    if (document.doc_id.empty()) {
      throw FormatError(name, line_number, "empty doc_id");
    }
    if (!seen.insert(document.doc_id).second) {
      throw FormatError(name, line_number,
                        "duplicate doc_id " + document.doc_id);
    }
    documents.push_back(std::move(document));
  }
  return documents;
}

void WriteJsonlCorpus(const std::vector<Document> &documents,
                      const std::string &path) {
  std::ofstream out = internal::OpenForWrite(path);
  WriteJsonlCorpus(documents, out);
  internal::CheckWritten(out, path);
}

void WriteJsonlCorpus(const std::vector<Document> &documents,
                      std::ostream &out) {
  for (const Document &document : documents) {
    ordered_json object;
    object["doc_id"] = document.doc_id;
    object["title"] = document.title;
    object["body"] = document.body;
    if (document.published_at) object["published_at"] = *document.published_at;
    object["language"] = document.language;
    try {
      out << object.dump() << '\n';
    } catch (const ordered_json::exception &e) {
      throw Error("cannot serialize document " + document.doc_id + ": " +
                  e.what());
    }
  }
}

void WriteConll(const std::vector<LabeledSentence> &sentences,
                const std::string &path) {
  std::ofstream out = internal::OpenForWrite(path);
  WriteConll(sentences, out);
  internal::CheckWritten(out, path);
}

void WriteConll(const std::vector<LabeledSentence> &sentences,
                std::ostream &out) {
  for (size_t s = 0; s < sentences.size(); ++s) {
    const LabeledSentence &sentence = sentences[s];
    if (sentence.tokens.size() != sentence.labels.size()) {
      throw Error("sentence " + std::to_string(s) + " has " +
                  std::to_string(sentence.tokens.size()) + " tokens but " +
                  std::to_string(sentence.labels.size()) + " labels");
    }
    if (sentence.tokens.empty()) {
      throw Error("sentence " + std::to_string(s) +
                  " is empty and cannot be written as CoNLL");
    }
    for (size_t i = 0; i < sentence.tokens.size(); ++i) {
      if (sentence.tokens[i].empty() || HasWhitespace(sentence.tokens[i]) ||
          HasWhitespace(sentence.labels[i])) {
        throw Error("sentence " + std::to_string(s) + " token " +
                    std::to_string(i) + " is empty or contains whitespace");
      }
      out << sentence.tokens[i] << '\t' << sentence.labels[i] << '\n';
    }
    out << '\n';
  }
}

std::vector<LabeledSentence> ReadConll(const std::string &path, bool lenient) {
  std::ifstream in = internal::OpenForRead(path);
  return ReadConll(in, path, lenient);
}

std::vector<LabeledSentence> ReadConll(std::istream &in,
                                       const std::string &name, bool lenient) {
  std::vector<LabeledSentence> sentences;
  LabeledSentence current;
  std::optional<BioLabel> previous;
  std::string line;
  int line_number = 0;

  auto flush = [&] {
    if (!current.tokens.empty()) sentences.push_back(std::move(current));
    current = LabeledSentence{};
    previous.reset();
  };

  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError(name, line_number,
                        "expected TOKEN<TAB>LABEL, got '" + line + "'");
    }
    std::string token = line.substr(0, tab);
    std::string label = line.substr(tab + 1);
    auto parsed = ParseBioLabel(label);
    if (!parsed) {
      throw FormatError(name, line_number, "malformed label '" + label + "'");
    }
    if (parsed->tag == BioLabel::kInside &&
        !(previous && previous->tag != BioLabel::kOutside &&
          previous->type == parsed->type)) {
      if (!lenient) {
        throw FormatError(name, line_number,
                          "invalid transition at line " +
                              std::to_string(line_number) + " (" + label + ")");
      }
      parsed->tag = BioLabel::kBegin;
      label = "B-" + parsed->type;
    }
    if (current.tokens.empty()) current.line = line_number;
    current.tokens.push_back(std::move(token));
    current.labels.push_back(std::move(label));
    previous = std::move(parsed);
  }
  flush();
  return sentences;
}

AnnotatedSentence MakeAnnotatedSentence(const Sentence &sentence,
                                        const std::vector<EntitySpan> &spans) {
  AnnotatedSentence out;
  out.sent_id = sentence.sent_id;
  for (const Token &token : sentence.tokens) out.tokens.push_back(token.text);
  out.labels = SpansToBio(sentence.tokens.size(), spans);
  out.spans = spans;
  return out;
}

void WriteAnnotatedJsonl(const std::vector<AnnotatedSentence> &sentences,
                         const std::string &path) {
  std::ofstream out = internal::OpenForWrite(path);
  WriteAnnotatedJsonl(sentences, out);
  internal::CheckWritten(out, path);
}

void WriteAnnotatedJsonl(const std::vector<AnnotatedSentence> &sentences,
                         std::ostream &out) {
  for (const AnnotatedSentence &sentence : sentences) {
    ordered_json object;
    object["sent_id"] = sentence.sent_id;
    object["tokens"] = sentence.tokens;
    object["labels"] = sentence.labels;
    object["spans"] = ordered_json::array();
    for (const EntitySpan &span : sentence.spans) {
      object["spans"].push_back(SpanToJson(span));
    }
    out << object.dump() << '\n';
  }
}

std::vector<AnnotatedSentence> ReadAnnotatedJsonl(const std::string &path) {
  std::ifstream in = internal::OpenForRead(path);
  return ReadAnnotatedJsonl(in, path);
}

std::vector<AnnotatedSentence> ReadAnnotatedJsonl(std::istream &in,
                                                  const std::string &name) {
  std::vector<AnnotatedSentence> sentences;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      ordered_json object = ordered_json::parse(line);
      AnnotatedSentence sentence;
      sentence.sent_id = object.at("sent_id").get<std::string>();
      sentence.tokens = object.at("tokens").get<std::vector<std::string>>();
      sentence.labels = object.at("labels").get<std::vector<std::string>>();
      if (sentence.tokens.size() != sentence.labels.size()) {
        throw FormatError(name, line_number, "ragged tokens/labels");
      }
      for (const auto &item : object.at("spans")) {
        EntitySpan span;
        span.start = item.at("start").get<size_t>();
        span.end = item.at("end").get<size_t>();
        span.type = item.at("type").get<std::string>();
        auto source = ParseSpanSource(item.at("source").get<std::string>());
        if (!source) throw FormatError(name, line_number, "unknown source");
        span.source = *source;
        if (item.contains("score")) span.score = item["score"].get<double>();
        if (span.start >= span.end || span.end > sentence.tokens.size()) {
          throw FormatError(name, line_number, "span out of bounds");
        }
        sentence.spans.push_back(std::move(span));
      }
      if (!IsSortedNonOverlapping(sentence.spans) ||
          SpansToBio(sentence.tokens.size(), sentence.spans) !=
              sentence.labels) {
        throw FormatError(name, line_number, "labels disagree with spans");
      }
      sentences.push_back(std::move(sentence));
    } catch (const ordered_json::exception &e) {
      throw FormatError(name, line_number, e.what());
    }
  }
  return sentences;
}

}  // namespace coronaner

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

// Corpus exchange formats:
//
//   Document JSONL   one object per line with doc_id, title, body,
//                    published_at (optional) and language.
//   CoNLL            "TOKEN\tLABEL" per line, a blank line after every
//                    sentence.
//   Annotated JSONL  {"sent_id", "tokens", "labels", "spans"} per sentence.
//
// Stream variants take a `name` used in error messages in place of a path.

#ifndef CORONANER_CORPUS_IO_H_
#define CORONANER_CORPUS_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "coronaner/span.h"
#include "coronaner/text.h"

namespace coronaner {

std::vector<Document> ReadJsonlCorpus(const std::string &path);
std::vector<Document> ReadJsonlCorpus(std::istream &in,
                                      const std::string &name);
void WriteJsonlCorpus(const std::vector<Document> &documents,
                      const std::string &path);
void WriteJsonlCorpus(const std::vector<Document> &documents,
                      std::ostream &out);

struct LabeledSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
  int line = 0;  // first line in the source file; ignored by ==

  bool operator==(const LabeledSentence &other) const {
    return tokens == other.tokens && labels == other.labels;
  }
};

// Throws Error on ragged token/label lists, empty sentences, or tokens that
// contain whitespace.
void WriteConll(const std::vector<LabeledSentence> &sentences,
                const std::string &path);
void WriteConll(const std::vector<LabeledSentence> &sentences,
                std::ostream &out);

// Strict mode rejects invalid BIO transitions with
// "invalid transition at line N"; lenient mode repairs them to B-X.
std::vector<LabeledSentence> ReadConll(const std::string &path,
                                       bool lenient = false);
std::vector<LabeledSentence> ReadConll(std::istream &in,
                                       const std::string &name,
                                       bool lenient = false);

struct AnnotatedSentence {
  std::string sent_id;
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
  std::vector<EntitySpan> spans;

  bool operator==(const AnnotatedSentence &other) const = default;
};

// Builds the record for a tokenized sentence and its final spans.
AnnotatedSentence MakeAnnotatedSentence(const Sentence &sentence,
                                        const std::vector<EntitySpan> &spans);

void WriteAnnotatedJsonl(const std::vector<AnnotatedSentence> &sentences,
                         const std::string &path);
void WriteAnnotatedJsonl(const std::vector<AnnotatedSentence> &sentences,
                         std::ostream &out);
std::vector<AnnotatedSentence> ReadAnnotatedJsonl(const std::string &path);
std::vector<AnnotatedSentence> ReadAnnotatedJsonl(std::istream &in,
                                                  const std::string &name);

}  // namespace coronaner

#endif  // CORONANER_CORPUS_IO_H_

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

// Document and sentence model plus the rule-based text cleaner, sentence
// segmenter and tokenizer. All offsets are byte offsets into UTF-8 text.

#ifndef CORONANER_TEXT_H_
#define CORONANER_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coronaner {

struct Document {
  std::string doc_id;
  std::string title;
  std::string body;
  std::optional<std::string> published_at;
  std::string language = "en";

  bool operator==(const Document &other) const = default;
};

struct Token {
  std::string text;
  size_t char_start = 0;
  size_t char_end = 0;  // exclusive
  std::optional<std::string> pos;

  bool operator==(const Token &other) const = default;
};

struct Sentence {
  std::string sent_id;
  std::string text;
  std::vector<Token> tokens;

  size_t size() const { return tokens.size(); }
  bool operator==(const Sentence &other) const = default;
};

struct TextOptions {
  // Code points removed by CleanText.
  std::u32string strip_chars = U"#*";

  // Tokens ending in '.' that never end a sentence.
  std::vector<std::string> abbreviations = {"Dr.", "No.", "U.S.", "e.g.",
                                            "i.e."};

  // Code points detached from the edges of whitespace-delimited words.
  std::u32string punctuation =
      U".,;:!?\"()'“”‘’«»";
};

// Removes strip characters, collapses whitespace runs to one space and
// trims both ends. Idempotent.
std::string CleanText(std::string_view raw, const TextOptions &options = {});

// Splits cleaned text after '.', '!' or '?' when followed by whitespace and
// then an ASCII uppercase letter or the end of text. A '.' closing a
// configured abbreviation never splits. Returned sentences are trimmed.
std::vector<std::string> SegmentSentences(std::string_view text,
                                          const TextOptions &options = {});

// Whitespace tokenization with leading/trailing punctuation detached into
// single-character tokens. Hyphens and internal apostrophes stay inside the
// word.
std::vector<Token> Tokenize(std::string_view sentence_text,
                            const TextOptions &options = {});

// Joins token texts with single spaces.
std::string JoinTokens(const std::vector<Token> &tokens, size_t begin,
                       size_t end);

// Sentence identifier used across pipeline stages: "{doc_id}:{index}".
std::string SentenceId(std::string_view doc_id, size_t index);

// Cleans, segments and tokenizes one document body.
std::vector<Sentence> SentencesFromDocument(const Document &document,
                                            const TextOptions &options = {});

// SentencesFromDocument over a whole corpus, documents processed on up to
// `workers` threads. Output order follows document order.
std::vector<Sentence> PrepareCorpus(const std::vector<Document> &documents,
                                    const TextOptions &options = {},
                                    int workers = 1);

}  // namespace coronaner

#endif  // CORONANER_TEXT_H_

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

#include "coronaner/text.h"

#include <algorithm>

#include "coronaner/parallel.h"
#include "coronaner/unicode.h"

namespace coronaner {

namespace {

bool Contains(const std::u32string &set, char32_t c) {
  return set.find(c) != std::u32string::npos;
}

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

std::string_view Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && utf8::IsSpace(text[begin])) ++begin;
  while (end > begin && utf8::IsSpace(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

// True if the whitespace-delimited word ending at text[end - 1] is one of
// the abbreviations. Opening brackets and quotes before the word are
// ignored.
bool EndsWithAbbreviation(std::string_view text, size_t end,
                          const TextOptions &options) {
  size_t begin = end;
  while (begin > 0 && !utf8::IsSpace(text[begin - 1])) --begin;
  std::string_view word = text.substr(begin, end - begin);
  while (!word.empty() &&
         (word.front() == '(' || word.front() == '"' || word.front() == '\'')) {
    word.remove_prefix(1);
  }
  return std::find(options.abbreviations.begin(), options.abbreviations.end(),
                   word) != options.abbreviations.end();
}

void AddToken(std::string_view text, size_t begin, size_t end,
              std::vector<Token> *tokens) {
  Token token;
  token.text = std::string(text.substr(begin, end - begin));
  token.char_start = begin;
  token.char_end = end;
  tokens->push_back(std::move(token));
}

}  // namespace

std::string CleanText(std::string_view raw, const TextOptions &options) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  size_t pos = 0;
  while (pos < raw.size()) {
    size_t length = utf8::CharLength(raw, pos);
    if (length == 1 && utf8::IsSpace(raw[pos])) {
      pending_space = true;
    } else if (!Contains(options.strip_chars, utf8::Decode(raw, pos))) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.append(raw.substr(pos, length));
    }
    pos += length;
  }
  return out;
}

std::vector<std::string> SegmentSentences(std::string_view text,
                                          const TextOptions &options) {
  std::vector<std::string> sentences;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (!IsTerminator(text[i])) continue;
    size_t next = i + 1;
    if (next < text.size() && !utf8::IsSpace(text[next])) continue;
    while (next < text.size() && utf8::IsSpace(text[next])) ++next;
    if (next < text.size() && !utf8::IsAsciiUpper(text[next])) continue;
    if (text[i] == '.' && EndsWithAbbreviation(text, i + 1, options)) continue;

    std::string_view sentence = Trim(text.substr(start, i + 1 - start));
    if (!sentence.empty()) sentences.emplace_back(sentence);
    start = next;
    i = next - 1;
  }
  if (start < text.size()) {
    std::string_view rest = Trim(text.substr(start));
    if (!rest.empty()) sentences.emplace_back(rest);
  }
  return sentences;
}

std::vector<Token> Tokenize(std::string_view text, const TextOptions &options) {
  std::vector<Token> tokens;
  size_t pos = 0;
  while (pos < text.size()) {
    if (utf8::IsSpace(text[pos])) {
      ++pos;
      continue;
    }
    size_t word_end = pos;
    while (word_end < text.size() && !utf8::IsSpace(text[word_end])) {
      ++word_end;
    }

    // Leading punctuation, one token per code point.
    size_t begin = pos;
    while (begin < word_end &&
           Contains(options.punctuation, utf8::Decode(text, begin))) {
      size_t length = utf8::CharLength(text, begin);
      AddToken(text, begin, begin + length, &tokens);
      begin += length;
    }

    // Trailing punctuation, collected right to left.
    std::vector<std::pair<size_t, size_t>> trailing;
    size_t end = word_end;
    while (end > begin) {
      size_t last = end - 1;
      while (last > begin &&
             (static_cast<unsigned char>(text[last]) & 0xC0) == 0x80) {
        --last;
      }
      if (!Contains(options.punctuation, utf8::Decode(text, last))) break;
      trailing.emplace_back(last, end);
      end = last;
    }

    if (begin < end) AddToken(text, begin, end, &tokens);
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
      AddToken(text, it->first, it->second, &tokens);
    }
    pos = word_end;
  }
  return tokens;
}

std::string JoinTokens(const std::vector<Token> &tokens, size_t begin,
                       size_t end) {
  std::string out;
  for (size_t i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += tokens[i].text;
  }
  return out;
}

std::string SentenceId(std::string_view doc_id, size_t index) {
  return std::string(doc_id) + ":" + std::to_string(index);
}

std::vector<Sentence> SentencesFromDocument(const Document &document,
                                            const TextOptions &options) {
  std::vector<Sentence> sentences;
  std::string cleaned = CleanText(document.body, options);
  for (std::string &text : SegmentSentences(cleaned, options)) {
    Sentence sentence;
    sentence.sent_id = SentenceId(document.doc_id, sentences.size());
    sentence.tokens = Tokenize(text, options);
    sentence.text = std::move(text);
    sentences.push_back(std::move(sentence));
  }
  return sentences;
}

std::vector<Sentence> PrepareCorpus(const std::vector<Document> &documents,
                                    const TextOptions &options, int workers) {
  std::vector<std::vector<Sentence>> per_document(documents.size());
  ParallelFor(documents.size(), workers, [&](size_t i) {
    per_document[i] = SentencesFromDocument(documents[i], options);
  });
  std::vector<Sentence> sentences;
  for (auto &batch : per_document) {
    std::move(batch.begin(), batch.end(), std::back_inserter(sentences));
  }
  return sentences;
}

}  // namespace coronaner

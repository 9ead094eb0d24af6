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

#ifndef CORONANER_UNICODE_H_
#define CORONANER_UNICODE_H_

#include <string>
#include <string_view>

namespace coronaner::utf8 {

// Byte length of the UTF-8 sequence starting at text[pos]. Invalid lead
// bytes and truncated sequences count as one byte so scanning always
// advances.
size_t CharLength(std::string_view text, size_t pos);

// Decodes the code point at text[pos]; invalid sequences yield U+FFFD.
char32_t Decode(std::string_view text, size_t pos);

void Append(std::string *out, char32_t code_point);

bool IsValid(std::string_view text);

// ASCII whitespace: space, tab, newline, carriage return, form feed,
// vertical tab.
inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }

// Simple case folding for ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic capitals. Other code points are copied unchanged.
std::string FoldCase(std::string_view text);

// Uppercases ASCII letters only.
std::string AsciiUpper(std::string_view text);

}  // namespace coronaner::utf8

#endif  // CORONANER_UNICODE_H_

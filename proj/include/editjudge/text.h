// Copyright 2026 The EditJudge Authors.
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

// Byte-level text helpers shared by the loaders, segmenter and backends.
// Text is treated as UTF-8; bytes >= 0x80 count as word characters so that
// accented words survive normalization intact.

#ifndef EDITJUDGE_TEXT_H_
#define EDITJUDGE_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace editjudge::text {

bool is_space(char c);
bool is_word_char(char c);

// True if `s` contains at least one letter or digit.
bool has_alnum(std::string_view s);

std::string_view trim(std::string_view s);

// "\r\n" and lone "\r" become "\n", then leading/trailing whitespace is
// trimmed. Applied to every text field at load time.
std::string normalize_field(std::string_view s);

std::string to_lower_ascii(std::string_view s);

// Lowercase, drop apostrophes, map every other non-word byte to a space and
// collapse runs of spaces. "I'm OK, b.i.d." -> "im ok b i d".
std::string normalize_for_match(std::string_view s);

// Whitespace-separated tokens of normalize_for_match(s).
std::vector<std::string> tokens(std::string_view s);

// Collapses each run of whitespace to one space and trims the ends.
std::string collapse_whitespace(std::string_view s);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view s);

// Lowercase, non-alphanumerics to '-', runs collapsed: used for file names.
std::string slug(std::string_view s);

}  // namespace editjudge::text

#endif  // EDITJUDGE_TEXT_H_

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

#include "editjudge/segmenter.h"

#include "editjudge/error.h"
#include "editjudge/resources.h"
#include "editjudge/text.h"

namespace editjudge {

namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; }

bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{'; }

}  // namespace

AbbreviationList AbbreviationList::parse(std::string_view contents) {
  AbbreviationList list;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t eol = contents.find('\n', pos);
    if (eol == std::string_view::npos) eol = contents.size();
    std::string_view line = text::trim(contents.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    std::size_t sp = 0;
    while (sp < line.size() && !text::is_space(line[sp])) ++sp;
    const std::string_view word = line.substr(0, sp);
    const std::string_view tag = text::trim(line.substr(sp));
    Kind kind = Kind::kSoft;
    if (tag == "nonbreaking") {
      kind = Kind::kNonbreaking;
    } else if (!tag.empty()) {
      throw ConfigError("abbreviation list: unknown tag '" + std::string(tag) + "'");
    }
    list.add(word, kind);
  }
  return list;
}

AbbreviationList AbbreviationList::load(const std::filesystem::path& path) {
  return parse(resources::read_file(path));
}

AbbreviationList AbbreviationList::defaults() { return parse(resources::get("abbreviations.txt")); }

void AbbreviationList::add(std::string_view abbreviation, Kind kind) {
  std::string key = text::to_lower_ascii(abbreviation);
  if (key.empty()) return;
  if (key.back() != '.') key.push_back('.');
  entries_[key] = kind;
}

const AbbreviationList::Kind* AbbreviationList::find(std::string_view word) const {
  auto it = entries_.find(text::to_lower_ascii(word));
  return it == entries_.end() ? nullptr : &it->second;
}

Segmenter::Segmenter() : abbreviations_(AbbreviationList::defaults()) {}

Segmenter::Segmenter(AbbreviationList abbreviations, SegmenterOptions options)
    : abbreviations_(std::move(abbreviations)), options_(options) {}

bool Segmenter::suppressed_by_abbreviation(std::string_view text, std::size_t period,
                                           std::size_t next) const {
  std::size_t start = period;
  while (start > 0 && !text::is_space(text[start - 1])) --start;
  while (start < period && is_opener(text[start])) ++start;
  const auto* kind = abbreviations_.find(text.substr(start, period - start + 1));
  if (kind == nullptr) return false;
  if (*kind == AbbreviationList::Kind::kNonbreaking) return true;
  // Soft abbreviation: a capitalized next word still starts a new sentence.
  while (next < text.size() && is_opener(text[next])) ++next;
  if (next >= text.size()) return false;
  const char c = text[next];
  return !(c >= 'A' && c <= 'Z');
}

std::vector<Sentence> Segmenter::segment(std::string_view text) const {
  std::vector<Sentence> out;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && text::is_space(text[b])) ++b;
    while (e > b && text::is_space(text[e - 1])) --e;
    if (b == e) return;
    const std::string_view piece = text.substr(b, e - b);
    if (!text::has_alnum(piece)) return;
    out.push_back(Sentence{std::string(piece), b, e});
  };

  std::size_t start = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == '\n' && options_.split_on_newline) {
      emit(start, i);
      start = ++i;
      continue;
    }
    if (c == ';' && options_.split_on_semicolon) {
      emit(start, i + 1);
      start = ++i;
      continue;
    }
    if (!is_terminal(c)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && is_terminal(text[j])) ++j;
    const std::size_t last_terminal = j - 1;
    while (j < n && is_closer(text[j])) ++j;
    const bool at_boundary = j == n || text::is_space(text[j]);
    if (!at_boundary) {
      i = j;
      continue;
    }
    std::size_t next = j;
    while (next < n && text::is_space(text[next]) && !(text[next] == '\n' && options_.split_on_newline)) {
      ++next;
    }
    const bool single_period = text[last_terminal] == '.' && last_terminal == i;
    if (single_period && j == last_terminal + 1 && suppressed_by_abbreviation(text, i, next)) {
      i = j;
      continue;
    }
    emit(start, j);
    start = j;
    i = j;
  }
  emit(start, n);
  return out;
}

}  // namespace editjudge

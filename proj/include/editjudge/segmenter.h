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

#ifndef EDITJUDGE_SEGMENTER_H_
#define EDITJUDGE_SEGMENTER_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace editjudge {

// A sentence and its byte range [begin, end) in the source text. The range is
// trimmed, so `text == source.substr(begin, end - begin)`.
struct Sentence {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Sentence&) const = default;
};

class AbbreviationList {
 public:
  enum class Kind {
    // Suppresses the split unless the next word is capitalized.
    kSoft,
    // Never splits ("Dr. Smith", "e.g. Tylenol").
    kNonbreaking,
  };

  AbbreviationList() = default;

  // One entry per line, optionally followed by the word "nonbreaking".
  // Lines starting with '#' and blank lines are ignored.
  static AbbreviationList parse(std::string_view contents);
  static AbbreviationList load(const std::filesystem::path& path);
  // The shipped clinical list.
  static AbbreviationList defaults();

  void add(std::string_view abbreviation, Kind kind);
  // `word` includes its final period; matching is case-insensitive.
  const Kind* find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, Kind, std::less<>> entries_;
};

struct SegmenterOptions {
  bool split_on_semicolon = false;
  bool split_on_newline = true;
};

// Rule-based splitter. Breaks after runs of '.', '!' or '?' (plus any closing
// quotes or brackets) that are followed by whitespace or the end of text, and
// at newlines. A period ending a listed abbreviation is not a break, subject
// to the abbreviation's kind. Fragments without a letter or digit are dropped.
class Segmenter {
 public:
  Segmenter();
  explicit Segmenter(AbbreviationList abbreviations, SegmenterOptions options = {});

  std::vector<Sentence> segment(std::string_view text) const;
  std::size_t count(std::string_view text) const { return segment(text).size(); }

  const SegmenterOptions& options() const { return options_; }

 private:
  bool suppressed_by_abbreviation(std::string_view text, std::size_t period, std::size_t next) const;

  AbbreviationList abbreviations_;
  SegmenterOptions options_;
};

}  // namespace editjudge

#endif  // EDITJUDGE_SEGMENTER_H_

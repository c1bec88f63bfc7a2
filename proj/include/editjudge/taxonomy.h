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

#ifndef EDITJUDGE_TAXONOMY_H_
#define EDITJUDGE_TAXONOMY_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace editjudge {

struct ThemeDef {
  std::string name;
  std::string description;
  std::vector<std::string> keywords;  // lowercase

  bool operator==(const ThemeDef&) const = default;
};

// Index into a taxonomy's label space. Labels 0..n-1 are the explicit themes
// in configuration order, label n is the implicit "Other".
class ThemeLabel {
 public:
  constexpr explicit ThemeLabel(std::size_t index) : index_(index) {}
  constexpr std::size_t index() const { return index_; }
  auto operator<=>(const ThemeLabel&) const = default;

 private:
  std::size_t index_;
};

class ThemeTaxonomy {
 public:
  static constexpr std::string_view kOther = "Other";

  // Throws DataError on an empty, duplicate or reserved ("Other") name.
  explicit ThemeTaxonomy(std::vector<ThemeDef> themes);

  const std::vector<ThemeDef>& themes() const { return themes_; }
  std::size_t theme_count() const { return themes_.size(); }
  std::size_t label_count() const { return themes_.size() + 1; }
  ThemeLabel other() const { return ThemeLabel(themes_.size()); }
  bool is_other(ThemeLabel l) const { return l.index() == themes_.size(); }

  std::string_view name(ThemeLabel label) const;
  std::vector<std::string> label_names() const;

  // Exact name lookup; "Other" resolves to other().
  std::optional<ThemeLabel> find(std::string_view name) const;
  // Case- and whitespace-insensitive lookup, for model outputs.
  std::optional<ThemeLabel> find_loose(std::string_view name) const;

  bool operator==(const ThemeTaxonomy&) const = default;

 private:
  std::vector<ThemeDef> themes_;
};

// `source` is a file path or the literal "default" for the shipped taxonomy.
ThemeTaxonomy load_taxonomy(std::string_view source);
ThemeTaxonomy parse_taxonomy(std::string_view json_text, const std::string& origin);
ThemeTaxonomy default_taxonomy();
std::string serialize_taxonomy(const ThemeTaxonomy& taxonomy);

}  // namespace editjudge

#endif  // EDITJUDGE_TAXONOMY_H_

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

// Prompt templates are plain text files with `{name}` placeholders. The
// shipped copies live under data/prompts/ and can be overridden file by file
// with a directory laid out the same way (`<dir>/prompts/judge.txt`, ...).

#ifndef EDITJUDGE_PROMPTS_H_
#define EDITJUDGE_PROMPTS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "editjudge/taxonomy.h"
#include "editjudge/types.h"

namespace editjudge {

using TemplateValues = std::vector<std::pair<std::string_view, std::string_view>>;

// Single pass: substituted values are never re-expanded, and `{word}` tokens
// that are not in `values` are kept as written.
std::string render_template(std::string_view tmpl, const TemplateValues& values);

// Names of all `{identifier}` placeholders in order of appearance.
std::vector<std::string> placeholders(std::string_view tmpl);

// Throws ConfigError naming the template and the first missing placeholder.
void require_placeholders(std::string_view tmpl, std::string_view template_name,
                          const std::vector<std::string_view>& names);

struct PromptLibrary {
  std::string zero_shot;     // {message} {chart_summary}
  std::string thematic;      // {message} {chart_summary} {themes}
  std::string theme_block;   // {name} {description}
  std::string rag_examples;  // {examples}
  std::string rag_example;   // {index} {message} {chart_summary} {response}
  std::string judge;         // {expert_sentence} {draft}
  std::string classify;      // {sentence} {labels}

  static PromptLibrary load(const std::optional<std::filesystem::path>& override_dir = std::nullopt);
  void validate() const;
};

enum class PromptKind { kZeroShot, kThematic };

std::string render_prompt(PromptKind kind, const MessageSample& sample, const ThemeTaxonomy& taxonomy,
                          const PromptLibrary& prompts);

// Per-theme enhancement templates ({response}, optionally {theme}) and one
// theme-parameterized corruption template ({response} {theme}
// {theme_description}).
struct TadpoleTemplates {
  std::map<std::string, std::string> enhance;  // keyed by theme name
  std::string corrupt;

  // Looks for prompts/tadpole/enhance/<slug(theme)>.txt for every theme.
  // Throws ConfigError when a theme has no template.
  static TadpoleTemplates load(const ThemeTaxonomy& taxonomy,
                               const std::optional<std::filesystem::path>& override_dir = std::nullopt);
};

}  // namespace editjudge

#endif  // EDITJUDGE_PROMPTS_H_

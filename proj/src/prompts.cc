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

#include "editjudge/prompts.h"

#include <algorithm>

#include "editjudge/error.h"
#include "editjudge/resources.h"
#include "editjudge/text.h"

namespace editjudge {

namespace {

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Length of the placeholder name starting after '{' at `pos`, or 0.
std::size_t ident_length(std::string_view s, std::size_t pos) {
  std::size_t len = 0;
  while (pos + len < s.size() && is_ident_char(s[pos + len])) ++len;
  if (len == 0 || pos + len >= s.size() || s[pos + len] != '}') return 0;
  return len;
}

}  // namespace

std::string render_template(std::string_view tmpl, const TemplateValues& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const std::size_t len = ident_length(tmpl, i + 1);
      if (len > 0) {
        const std::string_view key = tmpl.substr(i + 1, len);
        auto it = std::find_if(values.begin(), values.end(), [&](const auto& kv) { return kv.first == key; });
        if (it != values.end()) {
          out.append(it->second);
          i += len + 2;
          continue;
        }
      }
    }
    out.push_back(tmpl[i++]);
  }
  return out;
}

std::vector<std::string> placeholders(std::string_view tmpl) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '{') continue;
    const std::size_t len = ident_length(tmpl, i + 1);
    if (len > 0) out.emplace_back(tmpl.substr(i + 1, len));
  }
  return out;
}

void require_placeholders(std::string_view tmpl, std::string_view template_name,
                          const std::vector<std::string_view>& names) {
  const auto found = placeholders(tmpl);
  for (auto name : names) {
    if (std::find(found.begin(), found.end(), name) == found.end()) {
      throw ConfigError("template '" + std::string(template_name) + "' is missing placeholder {" +
                        std::string(name) + "}");
    }
  }
}

PromptLibrary PromptLibrary::load(const std::optional<std::filesystem::path>& override_dir) {
  PromptLibrary p;
  p.zero_shot = resources::load("prompts/zero_shot.txt", override_dir);
  p.thematic = resources::load("prompts/thematic.txt", override_dir);
  p.theme_block = resources::load("prompts/theme_block.txt", override_dir);
  p.rag_examples = resources::load("prompts/rag_examples.txt", override_dir);
  p.rag_example = resources::load("prompts/rag_example.txt", override_dir);
  p.judge = resources::load("prompts/judge.txt", override_dir);
  p.classify = resources::load("prompts/classify.txt", override_dir);
  p.validate();
  return p;
}

void PromptLibrary::validate() const {
  require_placeholders(zero_shot, "zero_shot", {"message", "chart_summary"});
  require_placeholders(thematic, "thematic", {"message", "chart_summary", "themes"});
  require_placeholders(theme_block, "theme_block", {"name"});
  require_placeholders(rag_examples, "rag_examples", {"examples"});
  require_placeholders(rag_example, "rag_example", {"message", "chart_summary", "response"});
  require_placeholders(judge, "judge", {"expert_sentence", "draft"});
  require_placeholders(classify, "classify", {"sentence", "labels"});
}

std::string render_prompt(PromptKind kind, const MessageSample& sample, const ThemeTaxonomy& taxonomy,
                          const PromptLibrary& prompts) {
  if (kind == PromptKind::kZeroShot) {
    require_placeholders(prompts.zero_shot, "zero_shot", {"message", "chart_summary"});
    return render_template(prompts.zero_shot,
                           {{"message", sample.message}, {"chart_summary", sample.chart_summary}});
  }
  require_placeholders(prompts.thematic, "thematic", {"message", "chart_summary", "themes"});
  std::string blocks;
  for (const auto& theme : taxonomy.themes()) {
    blocks += render_template(prompts.theme_block, {{"name", theme.name}, {"description", theme.description}});
  }
  // Template files end with a newline; drop the last one so the block list
  // sits in the surrounding template exactly where {themes} was.
  if (!blocks.empty() && blocks.back() == '\n') blocks.pop_back();
  return render_template(prompts.thematic, {{"message", sample.message},
                                            {"chart_summary", sample.chart_summary},
                                            {"themes", blocks}});
}

TadpoleTemplates TadpoleTemplates::load(const ThemeTaxonomy& taxonomy,
                                        const std::optional<std::filesystem::path>& override_dir) {
  TadpoleTemplates t;
  t.corrupt = resources::load("prompts/tadpole/corrupt.txt", override_dir);
  require_placeholders(t.corrupt, "tadpole/corrupt", {"response", "theme"});
  for (const auto& theme : taxonomy.themes()) {
    const std::string key = "prompts/tadpole/enhance/" + text::slug(theme.name) + ".txt";
    std::string body;
    try {
      body = resources::load(key, override_dir);
    } catch (const ConfigError&) {
      throw ConfigError("no enhancement template for theme '" + theme.name + "' (expected " + key + ")");
    }
    require_placeholders(body, key, {"response"});
    t.enhance.emplace(theme.name, std::move(body));
  }
  return t;
}

}  // namespace editjudge

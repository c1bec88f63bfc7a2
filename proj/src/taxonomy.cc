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

#include "editjudge/taxonomy.h"

#include <set>

#include <nlohmann/json.hpp>

#include "editjudge/error.h"
#include "editjudge/resources.h"
#include "editjudge/text.h"

namespace editjudge {

namespace {

std::string loose_key(std::string_view s) {
  return text::to_lower_ascii(text::collapse_whitespace(s));
}

}  // namespace

ThemeTaxonomy::ThemeTaxonomy(std::vector<ThemeDef> themes) : themes_(std::move(themes)) {
  std::set<std::string> seen;
  for (auto& t : themes_) {
    t.name = std::string(text::trim(t.name));
    if (t.name.empty()) throw DataError("taxonomy: theme with empty name");
    if (loose_key(t.name) == loose_key(kOther)) {
      throw DataError("taxonomy: \"Other\" is implicit and must not be listed");
    }
    if (!seen.insert(loose_key(t.name)).second) {
      throw DataError("taxonomy: duplicate theme name '" + t.name + "'");
    }
    for (auto& k : t.keywords) k = text::to_lower_ascii(text::trim(k));
  }
}

std::string_view ThemeTaxonomy::name(ThemeLabel label) const {
  if (label.index() < themes_.size()) return themes_[label.index()].name;
  return kOther;
}

std::vector<std::string> ThemeTaxonomy::label_names() const {
  std::vector<std::string> out;
  out.reserve(label_count());
  for (const auto& t : themes_) out.push_back(t.name);
  out.emplace_back(kOther);
  return out;
}

std::optional<ThemeLabel> ThemeTaxonomy::find(std::string_view name) const {
  for (std::size_t i = 0; i < themes_.size(); ++i) {
    if (themes_[i].name == name) return ThemeLabel(i);
  }
  if (name == kOther) return other();
  return std::nullopt;
}

std::optional<ThemeLabel> ThemeTaxonomy::find_loose(std::string_view name) const {
  const std::string key = loose_key(name);
  for (std::size_t i = 0; i < themes_.size(); ++i) {
    if (loose_key(themes_[i].name) == key) return ThemeLabel(i);
  }
  if (key == loose_key(kOther)) return other();
  return std::nullopt;
}

ThemeTaxonomy parse_taxonomy(std::string_view json_text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(origin, 0, std::string("malformed taxonomy JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("themes") || !doc["themes"].is_array()) {
    throw DataError(origin, 0, "taxonomy must be an object with a \"themes\" array");
  }
  std::vector<ThemeDef> themes;
  for (const auto& item : doc["themes"]) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
      throw DataError(origin, 0, "every theme needs a string \"name\"");
    }
    ThemeDef def;
    def.name = item["name"].get<std::string>();
    if (item.contains("description")) {
      if (!item["description"].is_string()) {
        throw DataError(origin, 0, "theme '" + def.name + "': description must be a string");
      }
      def.description = text::normalize_field(item["description"].get<std::string>());
    }
    if (item.contains("keywords")) {
      if (!item["keywords"].is_array()) {
        throw DataError(origin, 0, "theme '" + def.name + "': keywords must be an array");
      }
      for (const auto& k : item["keywords"]) {
        if (!k.is_string()) {
          throw DataError(origin, 0, "theme '" + def.name + "': keywords must be strings");
        }
        def.keywords.push_back(k.get<std::string>());
      }
    }
    themes.push_back(std::move(def));
  }
  try {
    return ThemeTaxonomy(std::move(themes));
  } catch (const DataError& e) {
    throw DataError(origin, 0, e.reason());
  }
}

ThemeTaxonomy default_taxonomy() {
  return parse_taxonomy(resources::get("taxonomy_default.json"), "default");
}

ThemeTaxonomy load_taxonomy(std::string_view source) {
  if (source == "default") return default_taxonomy();
  const std::string path(source);
  return parse_taxonomy(resources::read_file(path), path);
}

std::string serialize_taxonomy(const ThemeTaxonomy& taxonomy) {
  nlohmann::ordered_json doc;
  doc["themes"] = nlohmann::ordered_json::array();
  for (const auto& t : taxonomy.themes()) {
    nlohmann::ordered_json item;
    item["name"] = t.name;
    item["description"] = t.description;
    item["keywords"] = t.keywords;
    doc["themes"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

}  // namespace editjudge

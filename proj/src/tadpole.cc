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

#include "editjudge/tadpole.h"

#include <stdexcept>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "editjudge/error.h"
#include "editjudge/parallel.h"
#include "editjudge/text.h"

namespace editjudge {

using ojson = nlohmann::ordered_json;

std::vector<TadpoleAssignment> assign_themes(std::size_t base_count, const ThemeTaxonomy& taxonomy) {
  const std::size_t t = taxonomy.theme_count();
  if (t == 0) throw std::invalid_argument("assign_themes: taxonomy has no themes");
  std::vector<TadpoleAssignment> out;
  out.reserve(base_count);
  for (std::size_t i = 0; i < base_count; ++i) out.push_back({i, ThemeLabel(i % t)});
  return out;
}

GenerationRequest enhancement_request(const TadpoleBase& base, ThemeLabel theme, const ThemeTaxonomy& taxonomy,
                                      const TadpoleTemplates& templates) {
  const std::string name(taxonomy.name(theme));
  const auto it = templates.enhance.find(name);
  if (it == templates.enhance.end()) throw ConfigError("no enhancement template for theme '" + name + "'");
  return {render_template(it->second, {{"theme", name}, {"response", base.response}}), base.response, "enhance"};
}

GenerationRequest corruption_request(const TadpoleBase& base, ThemeLabel theme, const ThemeTaxonomy& taxonomy,
                                     const TadpoleTemplates& templates) {
  const std::string name(taxonomy.name(theme));
  const std::string& description = taxonomy.themes().at(theme.index()).description;
  return {render_template(templates.corrupt,
                          {{"theme", name}, {"theme_description", description}, {"response", base.response}}),
          base.response, "corrupt"};
}

TadpoleRun plan_tadpole(const std::vector<TadpoleBase>& bases, const ThemeTaxonomy& taxonomy) {
  TadpoleRun run;
  run.assignments = assign_themes(bases.size(), taxonomy);
  run.enhancement_calls = bases.size();
  run.corruption_calls = bases.size();
  return run;
}

TadpoleRun generate_tadpole_tuples(const std::vector<TadpoleBase>& bases, const ThemeTaxonomy& taxonomy,
                                   const TextGenerator& generator, const TadpoleTemplates& templates,
                                   std::size_t threads) {
  TadpoleRun run = plan_tadpole(bases, taxonomy);
  std::vector<std::optional<TadpoleTuple>> slots(bases.size());
  std::vector<std::string> reasons(bases.size());
  parallel_for(bases.size(), threads, [&](std::size_t i) {
    const TadpoleBase& b = bases[i];
    const ThemeLabel theme = run.assignments[i].theme;
    try {
      std::string enhanced(text::trim(generator.generate(enhancement_request(b, theme, taxonomy, templates))));
      std::string corrupted(text::trim(generator.generate(corruption_request(b, theme, taxonomy, templates))));
      if (enhanced.empty() || corrupted.empty()) {
        reasons[i] = "generator returned blank text";
        return;
      }
      slots[i] = TadpoleTuple{b.sample_id, theme, std::move(enhanced), b.response, std::move(corrupted)};
    } catch (const BackendError& e) {
      reasons[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (slots[i]) {
      run.tuples.push_back(std::move(*slots[i]));
    } else {
      spdlog::warn("dropping tuple for sample '{}': {}", bases[i].sample_id, reasons[i]);
      run.dropped.push_back({bases[i].sample_id, run.assignments[i].theme, reasons[i]});
    }
  }
  return run;
}

std::string_view pair_strategy_name(PairStrategy strategy) {
  switch (strategy) {
    case PairStrategy::kEnhanced:
      return "enhanced";
    case PairStrategy::kCorrupted:
      return "corrupted";
    case PairStrategy::kHardCorrupted:
      return "hard-corrupted";
    case PairStrategy::kBlend:
      return "blend";
  }
  return "";
}

std::optional<PairStrategy> parse_pair_strategy(std::string_view name) {
  for (auto s : {PairStrategy::kEnhanced, PairStrategy::kCorrupted, PairStrategy::kHardCorrupted,
                 PairStrategy::kBlend}) {
    if (pair_strategy_name(s) == name) return s;
  }
  return std::nullopt;
}

BlendSplit blend_split(std::size_t n) {
  const std::size_t third = n / 3;
  const std::size_t rem = n % 3;
  return {third + (rem > 0 ? 1 : 0), third + (rem > 1 ? 1 : 0), third};
}

PairingResult make_preference_pairs(const std::vector<TadpoleTuple>& tuples, const PairingOptions& options,
                                    const PromptRenderer& render_prompt) {
  if (tuples.empty()) throw std::invalid_argument("make_preference_pairs: no tuples");
  const BlendSplit split = blend_split(tuples.size());
  PairingResult result;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const TadpoleTuple& t = tuples[i];
    PairStrategy s = options.strategy;
    if (s == PairStrategy::kBlend) {
      s = i < split.enhanced                     ? PairStrategy::kEnhanced
          : i < split.enhanced + split.corrupted ? PairStrategy::kCorrupted
                                                 : PairStrategy::kHardCorrupted;
    }
    const std::string& chosen = s == PairStrategy::kCorrupted ? t.base : t.enhanced;
    const std::string& rejected = s == PairStrategy::kEnhanced ? t.base : t.corrupted;
    std::string reason;
    if (chosen == rejected) {
      reason = "chosen and rejected are identical";
    } else if (options.dedup_near_identical &&
               text::collapse_whitespace(text::to_lower_ascii(chosen)) ==
                   text::collapse_whitespace(text::to_lower_ascii(rejected))) {
      reason = "chosen and rejected differ only in case or whitespace";
    }
    if (!reason.empty()) {
      spdlog::info("skipping {} pair for sample '{}': {}", pair_strategy_name(s), t.sample_id, reason);
      result.skipped.push_back({i, s, std::move(reason)});
      continue;
    }
    result.pairs.push_back({render_prompt(t), chosen, rejected, s, t.theme, t.sample_id});
  }
  return result;
}

std::string tuples_to_jsonl(const std::vector<TadpoleTuple>& tuples, const ThemeTaxonomy& taxonomy) {
  std::string out;
  for (const auto& t : tuples) {
    ojson j = {{"sample_id", t.sample_id},
               {"theme", taxonomy.name(t.theme)},
               {"enhanced", t.enhanced},
               {"base", t.base},
               {"corrupted", t.corrupted}};
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<TadpoleTuple> parse_tuples(std::istream& in, const std::string& origin,
                                       const ThemeTaxonomy& taxonomy) {
  std::vector<TadpoleTuple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    TadpoleTuple t;
    std::string theme;
    try {
      const auto j = nlohmann::json::parse(line);
      t.sample_id = j.at("sample_id").get<std::string>();
      theme = j.at("theme").get<std::string>();
      t.enhanced = text::normalize_field(j.at("enhanced").get<std::string>());
      t.base = text::normalize_field(j.at("base").get<std::string>());
      t.corrupted = text::normalize_field(j.at("corrupted").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw DataError(origin, line_no, e.what());
    }
    const auto label = taxonomy.find(theme);
    if (!label || taxonomy.is_other(*label)) {
      throw DataError(origin, line_no, "theme '" + theme + "' is not a theme of the taxonomy");
    }
    t.theme = *label;
    if (t.sample_id.empty() || t.enhanced.empty() || t.base.empty() || t.corrupted.empty()) {
      throw DataError(origin, line_no, "empty field");
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string pairs_to_jsonl(const std::vector<PreferencePair>& pairs, const ThemeTaxonomy& taxonomy) {
  std::string out;
  for (const auto& p : pairs) {
    ojson j = {{"prompt", p.prompt},
               {"chosen", p.chosen},
               {"rejected", p.rejected},
               {"strategy", pair_strategy_name(p.strategy)},
               {"theme", taxonomy.name(p.theme)},
               {"sample_id", p.sample_id}};
    out += j.dump() + "\n";
  }
  return out;
}

std::string assignment_metadata(const TadpoleRun& run, const std::vector<TadpoleBase>& bases,
                                const ThemeTaxonomy& taxonomy) {
  ojson per_theme = ojson::object();
  for (const auto& theme : taxonomy.themes()) per_theme[theme.name] = 0;
  ojson assignments = ojson::array();
  for (const auto& a : run.assignments) {
    const std::string name(taxonomy.name(a.theme));
    per_theme[name] = per_theme[name].get<std::size_t>() + 1;
    assignments.push_back({{"sample_id", bases.at(a.base).sample_id}, {"theme", name}});
  }
  ojson dropped = ojson::array();
  for (const auto& d : run.dropped) {
    dropped.push_back({{"sample_id", d.sample_id}, {"theme", taxonomy.name(d.theme)}, {"reason", d.reason}});
  }
  ojson j = {{"assignment", "round-robin: base i gets theme i mod T, in input order"},
             {"bases", bases.size()},
             {"enhancement_calls", run.enhancement_calls},
             {"corruption_calls", run.corruption_calls},
             {"tuples", run.tuples.size()},
             {"per_theme", per_theme},
             {"assignments", assignments},
             {"dropped", dropped}};
  return j.dump(2) + "\n";
}

}  // namespace editjudge

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

// Theme-driven preference data. Each base response is assigned one theme; a
// generator writes an enhanced variant that adds content of that theme (r+)
// and a corrupted variant that removes it (r-). Tuples are then paired:
//
//   enhanced        chosen r+   rejected r
//   corrupted       chosen r    rejected r-
//   hard-corrupted  chosen r+   rejected r-
//   blend           input split into thirds, one strategy per third

#ifndef EDITJUDGE_TADPOLE_H_
#define EDITJUDGE_TADPOLE_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "editjudge/backends.h"
#include "editjudge/prompts.h"
#include "editjudge/taxonomy.h"

namespace editjudge {

struct TadpoleBase {
  std::string sample_id;
  std::string response;
};

struct TadpoleAssignment {
  std::size_t base = 0;  // index into the bases
  ThemeLabel theme{0};
};

// Base i gets explicit theme i mod T, so per-theme counts differ by at most
// one. Throws std::invalid_argument for a taxonomy without themes.
std::vector<TadpoleAssignment> assign_themes(std::size_t base_count, const ThemeTaxonomy& taxonomy);

struct TadpoleTuple {
  std::string sample_id;
  ThemeLabel theme{0};
  std::string enhanced;
  std::string base;
  std::string corrupted;

  bool operator==(const TadpoleTuple&) const = default;
};

struct DroppedTuple {
  std::string sample_id;
  ThemeLabel theme{0};
  std::string reason;
};

struct TadpoleRun {
  std::vector<TadpoleAssignment> assignments;
  std::vector<TadpoleTuple> tuples;  // in base order
  std::vector<DroppedTuple> dropped;
  std::size_t enhancement_calls = 0;
  std::size_t corruption_calls = 0;
};

// Renders the enhancement and corruption prompts for one assignment.
GenerationRequest enhancement_request(const TadpoleBase& base, ThemeLabel theme, const ThemeTaxonomy& taxonomy,
                                      const TadpoleTemplates& templates);
GenerationRequest corruption_request(const TadpoleBase& base, ThemeLabel theme, const ThemeTaxonomy& taxonomy,
                                     const TadpoleTemplates& templates);

// Assignments and call counts without calling the generator.
TadpoleRun plan_tadpole(const std::vector<TadpoleBase>& bases, const ThemeTaxonomy& taxonomy);

// One enhancement and one corruption call per base. A base whose calls fail
// (BackendError) or return blank text is dropped with the reason recorded.
TadpoleRun generate_tadpole_tuples(const std::vector<TadpoleBase>& bases, const ThemeTaxonomy& taxonomy,
                                   const TextGenerator& generator, const TadpoleTemplates& templates,
                                   std::size_t threads = 1);

enum class PairStrategy { kEnhanced, kCorrupted, kHardCorrupted, kBlend };

std::string_view pair_strategy_name(PairStrategy strategy);
std::optional<PairStrategy> parse_pair_strategy(std::string_view name);

struct PreferencePair {
  std::string prompt;
  std::string chosen;
  std::string rejected;
  PairStrategy strategy = PairStrategy::kEnhanced;  // never kBlend
  ThemeLabel theme{0};
  std::string sample_id;

  bool operator==(const PreferencePair&) const = default;
};

struct SkippedPair {
  std::size_t tuple = 0;
  PairStrategy strategy = PairStrategy::kEnhanced;
  std::string reason;
};

struct PairingResult {
  std::vector<PreferencePair> pairs;
  std::vector<SkippedPair> skipped;
};

// Sizes of the blend thirds for n tuples: the remainder goes to enhanced,
// then corrupted.
struct BlendSplit {
  std::size_t enhanced = 0;
  std::size_t corrupted = 0;
  std::size_t hard_corrupted = 0;
};
BlendSplit blend_split(std::size_t n);

struct PairingOptions {
  PairStrategy strategy = PairStrategy::kHardCorrupted;
  // Also skip pairs whose sides differ only in case and whitespace.
  bool dedup_near_identical = false;
};

using PromptRenderer = std::function<std::string(const TadpoleTuple&)>;

// Pairs with chosen == rejected are skipped. Throws std::invalid_argument on
// an empty tuple list.
PairingResult make_preference_pairs(const std::vector<TadpoleTuple>& tuples, const PairingOptions& options,
                                    const PromptRenderer& render_prompt);

// JSON lines:
//   tuple: {"sample_id", "theme", "enhanced", "base", "corrupted"}
//   pair:  {"prompt", "chosen", "rejected", "strategy", "theme", "sample_id"}
std::string tuples_to_jsonl(const std::vector<TadpoleTuple>& tuples, const ThemeTaxonomy& taxonomy);
// Throws DataError naming the line on a malformed record, a blank text or a
// theme outside the taxonomy's explicit themes.
std::vector<TadpoleTuple> parse_tuples(std::istream& in, const std::string& origin,
                                       const ThemeTaxonomy& taxonomy);
std::string pairs_to_jsonl(const std::vector<PreferencePair>& pairs, const ThemeTaxonomy& taxonomy);

// Assignment record written next to the tuples.
std::string assignment_metadata(const TadpoleRun& run, const std::vector<TadpoleBase>& bases,
                                const ThemeTaxonomy& taxonomy);

}  // namespace editjudge

#endif  // EDITJUDGE_TADPOLE_H_

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

// Judge, classifier and embedder interfaces plus the deterministic baseline
// implementations. Implementations must be safe to call concurrently.

#ifndef EDITJUDGE_BACKENDS_H_
#define EDITJUDGE_BACKENDS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "editjudge/segmenter.h"
#include "editjudge/taxonomy.h"
#include "editjudge/types.h"

namespace editjudge {

// Decides whether a draft already carries the content of one expert sentence.
// Throws BackendError when a remote call fails for good.
class ContentMatcher {
 public:
  virtual ~ContentMatcher() = default;
  virtual MatchDecision match(std::string_view expert_sentence, std::string_view draft) const = 0;
  virtual std::string name() const = 0;
};

class ThemeClassifier {
 public:
  virtual ~ThemeClassifier() = default;
  virtual ThemeLabel classify(std::string_view sentence, const ThemeTaxonomy& taxonomy) const = 0;
  virtual std::string name() const = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<float> embed(std::string_view text) const = 0;
  virtual std::string name() const = 0;
};

// Free-text generation, used by the preference-data pipeline. `source_text`
// is the text the prompt asks to rewrite and `task` names the kind of
// rewrite ("enhance", "corrupt"); remote generators only use the prompt.
struct GenerationRequest {
  std::string prompt;
  std::string source_text;
  std::string task;
};

class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string generate(const GenerationRequest& request) const = 0;
  virtual std::string name() const = 0;
  // Upper bound on useful parallel callers.
  virtual std::size_t max_concurrency() const { return 1; }
};

// Returns the source text unchanged. Lets the pipeline run end to end
// without a model; every pair it yields fails chosen != rejected.
class EchoGenerator : public TextGenerator {
 public:
  std::string generate(const GenerationRequest& request) const override { return request.source_text; }
  std::string name() const override { return "echo"; }
};

// |tokens(expert) ∩ tokens(candidate)| / |tokens(expert)| over token sets;
// 0 when the expert side has no tokens.
double token_containment(std::string_view expert_sentence, std::string_view candidate);

// Picks the draft sentence with the highest token containment of the expert
// sentence and returns it verbatim when the score reaches `tau`. Ties go to
// the earliest draft sentence.
class BaselineMatcher : public ContentMatcher {
 public:
  static constexpr double kDefaultTau = 0.6;

  explicit BaselineMatcher(Segmenter segmenter, double tau = kDefaultTau);

  MatchDecision match(std::string_view expert_sentence, std::string_view draft) const override;
  std::string name() const override { return "baseline"; }
  double tau() const { return tau_; }

 private:
  Segmenter segmenter_;
  double tau_;
};

// Counts keyword occurrences per theme over the normalized token sequence
// (multi-word keywords match as contiguous token runs). Highest count wins,
// ties go to the earlier theme, zero hits give "Other".
class KeywordClassifier : public ThemeClassifier {
 public:
  ThemeLabel classify(std::string_view sentence, const ThemeTaxonomy& taxonomy) const override;
  std::string name() const override { return "baseline"; }

  // Per-theme hit counts (size theme_count()).
  static std::vector<std::size_t> keyword_hits(std::string_view sentence, const ThemeTaxonomy& taxonomy);
};

// Bag of tokens hashed (FNV-1a) into a fixed number of buckets, L2
// normalized. The empty text maps to the zero vector.
class HashingEmbedder : public Embedder {
 public:
  static constexpr std::size_t kDefaultDimension = 256;

  explicit HashingEmbedder(std::size_t dimension = kDefaultDimension);

  std::vector<float> embed(std::string_view text) const override;
  std::string name() const override { return "baseline"; }
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t dimension_;
};

// What to do with a judge output that is not a verbatim substring of the
// draft. Whitespace-only differences are repaired under both policies.
enum class SpanPolicy {
  // Downgrade to no match.
  kStrict,
  // Accept if the longest common substring with the draft covers at least
  // `fuzzy_min_coverage` of the output, and use that substring as the span.
  kFuzzy,
};

std::string_view span_policy_name(SpanPolicy policy);
std::optional<SpanPolicy> parse_span_policy(std::string_view name);

struct SpanValidation {
  enum class Outcome { kExact, kWhitespaceRepaired, kFuzzyRepaired, kRejected };
  MatchDecision decision;
  Outcome outcome = Outcome::kRejected;
};

inline constexpr double kFuzzyMinCoverage = 0.8;

// Maps a raw judge span onto a verbatim span of `draft`. The returned
// decision, when a match, always has span == draft.substr(*offset, size).
SpanValidation validate_span(std::string_view raw_span, std::string_view draft, SpanPolicy policy,
                             double fuzzy_min_coverage = kFuzzyMinCoverage);

// Byte range [begin, end) of a match inside `draft`: the offset hint when it
// is consistent, otherwise the first occurrence. nullopt if not a substring.
std::optional<std::pair<std::size_t, std::size_t>> locate_span(const MatchDecision& decision,
                                                               std::string_view draft);

// Longest common substring of `a` and `b`: (position in b, length).
std::pair<std::size_t, std::size_t> longest_common_substring(std::string_view a, std::string_view b);

}  // namespace editjudge

#endif  // EDITJUDGE_BACKENDS_H_

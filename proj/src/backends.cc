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

#include "editjudge/backends.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "editjudge/text.h"

namespace editjudge {

double token_containment(std::string_view expert_sentence, std::string_view candidate) {
  const auto expert_tokens = text::tokens(expert_sentence);
  const std::set<std::string> expert_set(expert_tokens.begin(), expert_tokens.end());
  if (expert_set.empty()) return 0.0;
  const auto cand_tokens = text::tokens(candidate);
  const std::set<std::string> cand_set(cand_tokens.begin(), cand_tokens.end());
  std::size_t shared = 0;
  for (const auto& t : expert_set) shared += cand_set.count(t);
  return static_cast<double>(shared) / static_cast<double>(expert_set.size());
}

BaselineMatcher::BaselineMatcher(Segmenter segmenter, double tau)
    : segmenter_(std::move(segmenter)), tau_(tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
}

MatchDecision BaselineMatcher::match(std::string_view expert_sentence, std::string_view draft) const {
  const auto sentences = segmenter_.segment(draft);
  const Sentence* best = nullptr;
  double best_score = -1.0;
  for (const auto& s : sentences) {
    const double score = token_containment(expert_sentence, s.text);
    if (score > best_score) {
      best_score = score;
      best = &s;
    }
  }
  // A zero score never matches, even with tau == 0.
  if (best == nullptr || best_score <= 0.0 || best_score < tau_) return MatchDecision::no_match();
  return MatchDecision::match(best->text, best->begin);
}

std::vector<std::size_t> KeywordClassifier::keyword_hits(std::string_view sentence,
                                                         const ThemeTaxonomy& taxonomy) {
  const auto toks = text::tokens(sentence);
  std::vector<std::size_t> hits(taxonomy.theme_count(), 0);
  for (std::size_t t = 0; t < taxonomy.theme_count(); ++t) {
    for (const auto& keyword : taxonomy.themes()[t].keywords) {
      const auto kw = text::tokens(keyword);
      if (kw.empty() || kw.size() > toks.size()) continue;
      for (std::size_t i = 0; i + kw.size() <= toks.size(); ++i) {
        bool equal = true;
        for (std::size_t k = 0; k < kw.size() && equal; ++k) equal = toks[i + k] == kw[k];
        if (equal) ++hits[t];
      }
    }
  }
  return hits;
}

ThemeLabel KeywordClassifier::classify(std::string_view sentence, const ThemeTaxonomy& taxonomy) const {
  const auto hits = keyword_hits(sentence, taxonomy);
  std::size_t best = taxonomy.theme_count();
  std::size_t best_hits = 0;
  for (std::size_t t = 0; t < hits.size(); ++t) {
    if (hits[t] > best_hits) {
      best_hits = hits[t];
      best = t;
    }
  }
  return ThemeLabel(best);
}

HashingEmbedder::HashingEmbedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("embedding dimension must be positive");
}

std::vector<float> HashingEmbedder::embed(std::string_view text) const {
  std::vector<double> counts(dimension_, 0.0);
  for (const auto& tok : text::tokens(text)) counts[text::fnv1a(tok) % dimension_] += 1.0;
  double norm = 0.0;
  for (double c : counts) norm += c * c;
  std::vector<float> out(dimension_, 0.0f);
  if (norm == 0.0) return out;
  norm = std::sqrt(norm);
  for (std::size_t i = 0; i < dimension_; ++i) out[i] = static_cast<float>(counts[i] / norm);
  return out;
}

std::string_view span_policy_name(SpanPolicy policy) {
  return policy == SpanPolicy::kStrict ? "strict" : "fuzzy";
}

std::optional<SpanPolicy> parse_span_policy(std::string_view name) {
  if (name == "strict") return SpanPolicy::kStrict;
  if (name == "fuzzy") return SpanPolicy::kFuzzy;
  return std::nullopt;
}

std::pair<std::size_t, std::size_t> longest_common_substring(std::string_view a, std::string_view b) {
  // Rolling single-row DP; ties keep the earliest position in b.
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best_len = 0;
  std::size_t best_end = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      if (cur[j] > best_len || (cur[j] == best_len && best_len > 0 && j < best_end)) {
        best_len = cur[j];
        best_end = j;
      }
    }
    std::swap(prev, cur);
  }
  return {best_end - best_len, best_len};
}

SpanValidation validate_span(std::string_view raw_span, std::string_view draft, SpanPolicy policy,
                             double fuzzy_min_coverage) {
  SpanValidation v;
  const std::string_view span = text::trim(raw_span);
  if (span.empty()) return v;

  if (const auto pos = draft.find(span); pos != std::string_view::npos) {
    v.decision = MatchDecision::match(std::string(span), pos);
    v.outcome = SpanValidation::Outcome::kExact;
    return v;
  }

  // Whitespace-insensitive search: collapse the draft while remembering
  // where each kept byte came from.
  std::string collapsed;
  std::vector<std::size_t> origin;
  bool pending = false;
  for (std::size_t i = 0; i < draft.size(); ++i) {
    if (text::is_space(draft[i])) {
      pending = !collapsed.empty();
      continue;
    }
    if (pending) {
      collapsed.push_back(' ');
      origin.push_back(i - 1);
      pending = false;
    }
    collapsed.push_back(draft[i]);
    origin.push_back(i);
  }
  const std::string needle = text::collapse_whitespace(span);
  if (const auto pos = collapsed.find(needle); pos != std::string::npos && !needle.empty()) {
    const std::size_t begin = origin[pos];
    const std::size_t end = origin[pos + needle.size() - 1] + 1;
    v.decision = MatchDecision::match(std::string(draft.substr(begin, end - begin)), begin);
    v.outcome = SpanValidation::Outcome::kWhitespaceRepaired;
    return v;
  }

  if (policy == SpanPolicy::kFuzzy) {
    const auto [pos, len] = longest_common_substring(span, draft);
    if (len > 0 && static_cast<double>(len) >= fuzzy_min_coverage * static_cast<double>(span.size())) {
      std::string_view piece = draft.substr(pos, len);
      std::size_t lead = 0;
      while (lead < piece.size() && text::is_space(piece[lead])) ++lead;
      piece = text::trim(piece);
      if (!piece.empty()) {
        v.decision = MatchDecision::match(std::string(piece), pos + lead);
        v.outcome = SpanValidation::Outcome::kFuzzyRepaired;
        return v;
      }
    }
  }
  return v;
}

std::optional<std::pair<std::size_t, std::size_t>> locate_span(const MatchDecision& decision,
                                                               std::string_view draft) {
  if (!decision.is_match() || decision.span().empty()) return std::nullopt;
  const std::string& span = decision.span();
  if (auto hint = decision.offset();
      hint && *hint <= draft.size() && draft.substr(*hint, span.size()) == span) {
    return std::make_pair(*hint, *hint + span.size());
  }
  const auto pos = draft.find(span);
  if (pos == std::string_view::npos) return std::nullopt;
  return std::make_pair(pos, pos + span.size());
}

}  // namespace editjudge

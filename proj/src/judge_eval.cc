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

#include "editjudge/judge_eval.h"

#include <optional>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "editjudge/error.h"
#include "editjudge/parallel.h"

namespace editjudge {

namespace {

double fraction(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

JudgeEvalReport evaluate_matcher(const std::vector<JudgeAnnotation>& annotations,
                                 const ContentMatcher& matcher, std::size_t threads) {
  if (annotations.empty()) throw std::invalid_argument("evaluate_matcher: no annotations");

  std::vector<std::optional<MatchDecision>> predicted(annotations.size());
  parallel_for(annotations.size(), threads, [&](std::size_t i) {
    try {
      predicted[i] = matcher.match(annotations[i].expert_sentence, annotations[i].draft);
    } catch (const BackendError& e) {
      spdlog::warn("judge-eval item {}: {}", i + 1, e.what());
    }
  });

  JudgeEvalReport r;
  r.matcher = matcher.name();
  r.n = annotations.size();
  std::size_t agree = 0, non_match_ok = 0, exact = 0, overlap = 0;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const auto& a = annotations[i];
    if (a.gold.is_match()) {
      ++r.n_gold_match;
    } else {
      ++r.n_gold_no_match;
    }
    if (!predicted[i]) {
      ++r.errored;
      continue;
    }
    const MatchDecision& p = *predicted[i];
    if (p.is_match() == a.gold.is_match()) ++agree;
    if (!a.gold.is_match()) {
      if (!p.is_match()) ++non_match_ok;
      continue;
    }
    if (!p.is_match()) continue;
    if (p.span() == a.gold.span()) ++exact;
    const auto gold_range = locate_span(a.gold, a.draft);
    const auto pred_range = locate_span(p, a.draft);
    if (gold_range && pred_range && pred_range->first < gold_range->second &&
        gold_range->first < pred_range->second) {
      ++overlap;
    }
  }
  r.agreement = fraction(agree, r.n);
  r.non_match_agreement = fraction(non_match_ok, r.n_gold_no_match);
  r.match_agreement = fraction(exact, r.n_gold_match);
  r.match_overlap = fraction(overlap, r.n_gold_match);
  return r;
}

}  // namespace editjudge

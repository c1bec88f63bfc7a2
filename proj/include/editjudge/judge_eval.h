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

#ifndef EDITJUDGE_JUDGE_EVAL_H_
#define EDITJUDGE_JUDGE_EVAL_H_

#include <cstddef>
#include <string>
#include <vector>

#include "editjudge/backends.h"
#include "editjudge/types.h"

namespace editjudge {

// How well a matcher reproduces human match annotations.
//
//   agreement           match/no-match decision equals gold, over all items
//   non_match_agreement gold NO MATCH items judged NO MATCH
//   match_agreement     gold match items whose span equals the gold span
//   match_overlap       gold match items whose span shares at least one
//                       byte of the draft with the gold span
//
// Fractions with an empty denominator are 0.
struct JudgeEvalReport {
  std::string matcher;
  double agreement = 0.0;
  double non_match_agreement = 0.0;
  double match_agreement = 0.0;
  double match_overlap = 0.0;
  std::size_t n = 0;
  std::size_t n_gold_match = 0;
  std::size_t n_gold_no_match = 0;
  std::size_t errored = 0;  // backend failures, counted as wrong decisions
};

// Throws std::invalid_argument on an empty annotation list.
JudgeEvalReport evaluate_matcher(const std::vector<JudgeAnnotation>& annotations,
                                 const ContentMatcher& matcher, std::size_t threads = 1);

}  // namespace editjudge

#endif  // EDITJUDGE_JUDGE_EVAL_H_

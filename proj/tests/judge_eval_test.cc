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

#include <gtest/gtest.h>

#include "editjudge/dataset.h"
#include "test_support.h"

namespace editjudge {
namespace {

using testing::ReplayMatcher;

ReplayMatcher gold_replay(const std::vector<JudgeAnnotation>& annotations) {
  ReplayMatcher m;
  for (const auto& a : annotations) m.set(a.expert_sentence, a.draft, a.gold);
  return m;
}

TEST(JudgeEvalTest, GoldReplayScoresOne) {
  const auto annotations = load_judge_annotations(testing::toy_path("judge_annotations.jsonl"));
  const auto m = gold_replay(annotations);
  const auto r = evaluate_matcher(annotations, m);
  EXPECT_EQ(r.agreement, 1.0);
  EXPECT_EQ(r.non_match_agreement, 1.0);
  EXPECT_EQ(r.match_agreement, 1.0);
  EXPECT_EQ(r.match_overlap, 1.0);
  EXPECT_EQ(r.n, 10u);
  EXPECT_EQ(r.n_gold_match + r.n_gold_no_match, 10u);
  EXPECT_EQ(r.matcher, "replay");
}

TEST(JudgeEvalTest, OneFlippedDecisionInTen) {
  const auto annotations = load_judge_annotations(testing::toy_path("judge_annotations.jsonl"));
  auto m = gold_replay(annotations);
  const auto& flipped = annotations[1];
  ASSERT_FALSE(flipped.gold.is_match());
  m.set(flipped.expert_sentence, flipped.draft, MatchDecision::match(flipped.draft));
  const auto r = evaluate_matcher(annotations, m);
  EXPECT_DOUBLE_EQ(r.agreement, 0.9);
  EXPECT_DOUBLE_EQ(r.non_match_agreement,
                   static_cast<double>(r.n_gold_no_match - 1) / static_cast<double>(r.n_gold_no_match));
  EXPECT_EQ(r.match_agreement, 1.0);
}

TEST(JudgeEvalTest, OverlapWithoutExactSpan) {
  const std::vector<JudgeAnnotation> annotations = {
      {"e1", "Rest today. Call us tomorrow.", MatchDecision::match("Call us tomorrow.", 12)},
      {"e2", "Rest today. Call us tomorrow.", MatchDecision::match("Rest today.", 0)},
  };
  ReplayMatcher m;
  m.set("e1", annotations[0].draft, MatchDecision::match("Call us"));
  m.set("e2", annotations[1].draft, MatchDecision::match("Call us tomorrow."));
  const auto r = evaluate_matcher(annotations, m);
  EXPECT_EQ(r.agreement, 1.0);
  EXPECT_EQ(r.match_agreement, 0.0);
  EXPECT_EQ(r.match_overlap, 0.5);
  EXPECT_EQ(r.non_match_agreement, 0.0);  // no gold NO MATCH items
}

TEST(JudgeEvalTest, BackendErrorsCountAsWrong) {
  const std::vector<JudgeAnnotation> annotations = {
      {"known", "Draft.", MatchDecision::no_match()},
      {"unknown", "Draft.", MatchDecision::no_match()},
  };
  ReplayMatcher m;
  m.set("known", "Draft.", MatchDecision::no_match());
  const auto r = evaluate_matcher(annotations, m, 2);
  EXPECT_EQ(r.errored, 1u);
  EXPECT_EQ(r.agreement, 0.5);
  EXPECT_EQ(r.non_match_agreement, 0.5);
}

TEST(JudgeEvalTest, BaselineOnToyAnnotations) {
  const auto annotations = load_judge_annotations(testing::toy_path("judge_annotations.jsonl"));
  BaselineMatcher m{Segmenter()};
  const auto r = evaluate_matcher(annotations, m);
  for (double v : {r.agreement, r.non_match_agreement, r.match_agreement, r.match_overlap}) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(evaluate_matcher(annotations, m, 4).agreement, r.agreement);
}

TEST(JudgeEvalTest, EmptyInputRejected) {
  BaselineMatcher m{Segmenter()};
  EXPECT_THROW(evaluate_matcher({}, m), std::invalid_argument);
}

}  // namespace
}  // namespace editjudge

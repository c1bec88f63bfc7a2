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

#include "editjudge/text.h"

#include <gtest/gtest.h>

namespace editjudge::text {
namespace {

TEST(TextTest, NormalizeForMatchDropsPunctuationAndApostrophes) {
  EXPECT_EQ(normalize_for_match("I'm OK, b.i.d."), "im ok b i d");
  EXPECT_EQ(normalize_for_match("  Hello   WORLD!! "), "hello world");
  EXPECT_EQ(normalize_for_match("..."), "");
}

TEST(TextTest, TokensSplitNormalizedText) {
  EXPECT_EQ(tokens("Call our office."), (std::vector<std::string>{"call", "our", "office"}));
  EXPECT_TRUE(tokens("  ?! ").empty());
}

TEST(TextTest, NonAsciiBytesAreWordCharacters) {
  EXPECT_TRUE(has_alnum("\xc3\xa9"));
  EXPECT_EQ(tokens("caf\xc3\xa9 ok"), (std::vector<std::string>{"caf\xc3\xa9", "ok"}));
}

TEST(TextTest, NormalizeFieldUnifiesLineEndingsAndTrims) {
  EXPECT_EQ(normalize_field("  a\r\nb\rc  \n"), "a\nb\nc");
}

TEST(TextTest, CollapseWhitespace) {
  EXPECT_EQ(collapse_whitespace("  a \t\n b  c "), "a b c");
  EXPECT_EQ(collapse_whitespace(""), "");
}

TEST(TextTest, SlugIsFileNameSafe) {
  EXPECT_EQ(slug("Symptom-Related Follow-Up Question"), "symptom-related-follow-up-question");
  EXPECT_EQ(slug("  Model A / zero shot "), "model-a-zero-shot");
}

TEST(TextTest, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a(""), 14695981039346656037ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(TextTest, TrimAndHasAlnum) {
  EXPECT_EQ(trim(" \t x y \n"), "x y");
  EXPECT_FALSE(has_alnum(" .,;!"));
  EXPECT_TRUE(has_alnum("-- 7 --"));
}

}  // namespace
}  // namespace editjudge::text

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

#include <gtest/gtest.h>

#include "editjudge/error.h"
#include "test_support.h"

namespace editjudge {
namespace {

TEST(TaxonomyTest, DefaultHasEightThemesPlusOther) {
  const auto tax = default_taxonomy();
  EXPECT_EQ(tax.theme_count(), 8u);
  EXPECT_EQ(tax.label_count(), 9u);
  const std::vector<std::string> expected = {"Empathetic Communication",
                                             "Symptom-Related Follow-Up Question",
                                             "Medication-Related Follow-Up Question",
                                             "Medical Assessment",
                                             "Medical Treatment",
                                             "Treatment Planning",
                                             "Treatment Contingency Planning",
                                             "Logistical Information",
                                             "Other"};
  EXPECT_EQ(tax.label_names(), expected);
  EXPECT_TRUE(tax.is_other(tax.other()));
  for (const auto& t : tax.themes()) EXPECT_FALSE(t.keywords.empty()) << t.name;
}

TEST(TaxonomyTest, LoadDefaultByName) { EXPECT_EQ(load_taxonomy("default"), default_taxonomy()); }

TEST(TaxonomyTest, TwoThemeConfig) {
  const auto tax = parse_taxonomy(
      R"({"themes": [{"name": "Greeting", "keywords": ["hello"]}, {"name": "Plan", "description": "next steps"}]})",
      "inline");
  EXPECT_EQ(tax.label_count(), 3u);
  EXPECT_EQ(tax.name(ThemeLabel(1)), "Plan");
  EXPECT_EQ(tax.themes()[1].description, "next steps");
  EXPECT_EQ(tax.name(tax.other()), "Other");
}

TEST(TaxonomyTest, RejectsDuplicatesAndExplicitOther) {
  EXPECT_THROW(parse_taxonomy(R"({"themes": [{"name": "A"}, {"name": "A"}]})", "dup"), DataError);
  EXPECT_THROW(parse_taxonomy(R"({"themes": [{"name": "Other"}]})", "other"), DataError);
  EXPECT_THROW(parse_taxonomy(R"({"themes": [{"name": ""}]})", "empty"), DataError);
  EXPECT_THROW(parse_taxonomy(R"([1, 2])", "shape"), DataError);
  EXPECT_THROW(parse_taxonomy("{", "json"), DataError);
}

TEST(TaxonomyTest, FindAndFindLoose) {
  const auto tax = default_taxonomy();
  EXPECT_EQ(tax.find("Medical Treatment"), ThemeLabel(4));
  EXPECT_EQ(tax.find("Other"), tax.other());
  EXPECT_FALSE(tax.find("medical treatment").has_value());
  EXPECT_EQ(tax.find_loose("  medical   TREATMENT "), ThemeLabel(4));
  EXPECT_FALSE(tax.find_loose("Surgery").has_value());
}

TEST(TaxonomyTest, SerializeRoundTrips) {
  const auto tax = default_taxonomy();
  EXPECT_EQ(parse_taxonomy(serialize_taxonomy(tax), "roundtrip"), tax);
}

TEST(TaxonomyTest, LoadFromFile) {
  testing::TempDir dir;
  const auto path = dir.write("tax.json", R"({"themes": [{"name": "Only"}]})");
  const auto tax = load_taxonomy(path.string());
  EXPECT_EQ(tax.label_names(), (std::vector<std::string>{"Only", "Other"}));
}

}  // namespace
}  // namespace editjudge

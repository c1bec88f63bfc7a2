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

// Randomized properties. Seeds are fixed so failures reproduce.

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "editjudge/analysis.h"
#include "editjudge/edit_metrics.h"
#include "editjudge/kernels.h"
#include "editjudge/segmenter.h"
#include "editjudge/text.h"
#include "test_support.h"

namespace editjudge {
namespace {

using testing::make_vocab;
using testing::random_sentence;

std::string join(const std::vector<std::string>& parts, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

TEST(PropertyTest, F1IsTwoEmOverTwoEmPlusEaPlusEd) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> d(0, 50);
  for (int i = 0; i < 1000; ++i) {
    const EditCounts c{d(rng), d(rng), d(rng)};
    const auto s = content_scores(c);
    const double denom = 2.0 * c.em + c.ea + c.ed;
    EXPECT_NEAR(s.f1, denom == 0 ? 0.0 : 2.0 * c.em / denom, 1e-12);
    EXPECT_GE(s.f1, std::min(s.precision, s.recall) - 1e-12);
    EXPECT_LE(s.f1, std::max(s.precision, s.recall) + 1e-12);
  }
}

TEST(PropertyTest, MicroAverageIgnoresOrder) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> d(0, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<EditCounts> counts(1 + trial % 7);
    for (auto& c : counts) c = {d(rng), d(rng), d(rng)};
    const auto a = aggregate_micro(counts);
    std::shuffle(counts.begin(), counts.end(), rng);
    const auto b = aggregate_micro(counts);
    EXPECT_EQ(a.f1, b.f1);
    EXPECT_EQ(a.precision, b.precision);
  }
}

TEST(PropertyTest, EditCountsPartitionExpertSentences) {
  std::mt19937_64 rng(13);
  const auto vocab = make_vocab("w", 40);
  Segmenter seg;
  BaselineMatcher m(seg);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> expert, draft;
    const std::size_t ne = 1 + rng() % 6, nd = 1 + rng() % 6;
    for (std::size_t i = 0; i < ne; ++i) expert.push_back(random_sentence(rng, vocab, 2, 8));
    for (std::size_t i = 0; i < nd; ++i) {
      draft.push_back(rng() % 3 == 0 ? expert[rng() % ne] : random_sentence(rng, vocab, 2, 8));
    }
    const auto e = join(expert), dr = join(draft);
    const auto r = count_edits(e, dr, m, seg);
    EXPECT_EQ(r.counts.em + r.counts.ea, seg.count(e)) << e;
    EXPECT_LE(r.counts.ed, seg.count(dr)) << dr;
    EXPECT_EQ(r.unlocatable_spans, 0u);
    for (const auto& [b, end] : r.removed) EXPECT_LE(end, dr.size());
  }
}

TEST(PropertyTest, SwappingThemeSidesSwapsPrecisionAndRecall) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<std::size_t> d(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    ThemeCounts a(9), b(9);
    for (std::size_t k = 0; k < 9; ++k) {
      a.counts[k] = d(rng);
      b.counts[k] = d(rng);
    }
    for (const bool presence : {false, true}) {
      const ThemeScoreOptions opt{true, presence};
      const auto ab = theme_edit_scores(a, b, opt).micro;
      const auto ba = theme_edit_scores(b, a, opt).micro;
      EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
      EXPECT_DOUBLE_EQ(ab.recall, ba.precision);
      EXPECT_DOUBLE_EQ(ab.f1, ba.f1);
    }
  }
}

TEST(PropertyTest, SegmenterCoversAlphanumericText) {
  std::mt19937_64 rng(15);
  const auto vocab = make_vocab("tok", 30);
  Segmenter seg;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> parts;
    const std::size_t n = 1 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) parts.push_back(random_sentence(rng, vocab, 1, 10));
    const auto text = join(parts, rng() % 2 ? " " : "\n");
    const auto sentences = seg.segment(text);
    EXPECT_EQ(sentences.size(), n) << text;
    std::string rebuilt;
    for (const auto& s : sentences) {
      EXPECT_EQ(text.substr(s.begin, s.end - s.begin), s.text);
      rebuilt += s.text;
    }
    std::string letters;
    for (char c : text) {
      if (std::isalnum(static_cast<unsigned char>(c))) letters += c;
    }
    std::string rebuilt_letters;
    for (char c : rebuilt) {
      if (std::isalnum(static_cast<unsigned char>(c))) rebuilt_letters += c;
    }
    EXPECT_EQ(rebuilt_letters, letters);
    EXPECT_EQ(seg.segment(text), sentences);
  }
}

TEST(PropertyTest, StrictAgreementIsInclusionPlusExclusion) {
  std::mt19937_64 rng(16);
  const auto tax = testing::numbered_taxonomy(4);
  testing::TagClassifier c;
  Segmenter seg;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MultiResponseSample> multi;
    const std::size_t annotators = 2 + rng() % 3;
    for (std::size_t s = 0; s < 1 + rng() % 10; ++s) {
      MultiResponseSample m;
      m.id = "m" + std::to_string(s);
      m.message = "msg";
      m.chart_summary = "chart";
      for (std::size_t a = 0; a < annotators; ++a) {
        std::vector<std::string> sentences;
        for (std::size_t k = 0; k < 1 + rng() % 3; ++k) {
          const auto tag = rng() % 5;
          sentences.push_back(tag == 4 ? "plain words here." : "about t" + std::to_string(tag) + " here.");
        }
        m.responses.push_back({"A" + std::to_string(a), join(sentences)});
      }
      multi.push_back(std::move(m));
    }
    const auto r = strict_agreement(multi, c, seg, tax);
    ASSERT_EQ(r.rows.size(), tax.label_count());
    for (const auto& row : r.rows) {
      EXPECT_DOUBLE_EQ(row.strict_agreement, row.strict_inclusion + row.strict_exclusion);
      EXPECT_LE(row.strict_agreement, 1.0 + 1e-12);
      EXPECT_GE(row.strict_inclusion, 0.0);
    }
  }
}

TEST(PropertyTest, KernelVariantsAgreeOnRandomData) {
  if (!kernels::isa_supported(kernels::Isa::kAvx2)) GTEST_SKIP() << "no AVX2";
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<float> u(-3.0f, 3.0f);
  const auto& s = kernels::table(kernels::Isa::kScalar);
  const auto& v = kernels::table(kernels::Isa::kAvx2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng() % 1200;
    std::vector<float> a(n), b(n);
    double mag = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
      mag += std::abs(static_cast<double>(a[i]) * b[i]);
    }
    EXPECT_NEAR(s.dot(a.data(), b.data(), n), v.dot(a.data(), b.data(), n), 1e-13 * mag);
    EXPECT_NEAR(s.squared_norm(a.data(), n), v.squared_norm(a.data(), n), 1e-13 * (1.0 + 9.0 * n));
  }
}

}  // namespace
}  // namespace editjudge

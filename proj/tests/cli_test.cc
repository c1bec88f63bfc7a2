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

#include "editjudge/commands.h"

#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "test_support.h"

namespace editjudge {
namespace {

using testing::TempDir;
using testing::toy_path;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

TEST(CliTest, EvaluateWritesTables) {
  TempDir dir;
  const auto r = run_cli({"evaluate", "--samples", toy_path("samples.jsonl"), "--drafts", toy_path("drafts.jsonl"),
                          "--out", dir / "eval"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* f : {"config.json", "summary.md", "summary.csv", "samples.md", "samples.csv", "samples.jsonl",
                        "themes.md", "themes.csv", "errored.md", "errored.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "eval" / f)) << f;
  }
  EXPECT_NE(r.out.find("| all |"), std::string::npos);
  EXPECT_EQ(line_count(testing::slurp(dir / "eval/samples.jsonl")), 12u);
  const auto config = nlohmann::json::parse(testing::slurp(dir / "eval/config.json"));
  EXPECT_EQ(config["command"], "evaluate");
}

TEST(CliTest, RerunsAreByteIdentical) {
  TempDir dir;
  const std::vector<std::string> args = {"evaluate", "--samples", toy_path("samples.jsonl"), "--drafts",
                                         toy_path("drafts.jsonl"), "--out", dir / "eval", "--threads", "3"};
  ASSERT_EQ(run_cli(args).code, 0);
  const auto first = testing::snapshot(dir / "eval");
  ASSERT_EQ(run_cli(args).code, 0);
  EXPECT_EQ(testing::snapshot(dir / "eval"), first);
  TempDir single;
  auto one = args;
  one[6] = (single / "eval").string();
  one[8] = "1";
  ASSERT_EQ(run_cli(one).code, 0);
  auto a = testing::snapshot(single / "eval");
  auto b = first;
  // Only the recorded settings may differ.
  for (auto* m : {&a, &b}) {
    for (auto it = m->begin(); it != m->end();) {
      it = it->first.find("config") != std::string::npos || it->first.ends_with(".md") ||
                   it->first.ends_with(".csv")
               ? m->erase(it)
               : std::next(it);
    }
  }
  EXPECT_EQ(a, b);
}

TEST(CliTest, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run_cli({}).code, cli::kExitConfig);
  EXPECT_EQ(run_cli({"no-such-command"}).code, cli::kExitConfig);
  EXPECT_EQ(run_cli({"evaluate", "--samples", toy_path("samples.jsonl")}).code, cli::kExitConfig);
  const auto missing = run_cli({"evaluate", "--samples", dir / "absent.jsonl", "--drafts",
                                toy_path("drafts.jsonl"), "--out", dir / "o"});
  EXPECT_EQ(missing.code, cli::kExitData);
  EXPECT_NE(missing.err.find("absent.jsonl"), std::string::npos);
  EXPECT_EQ(run_cli({"evaluate", "--samples", toy_path("samples.jsonl"), "--drafts", toy_path("drafts.jsonl"),
                     "--matcher", "remote", "--out", dir / "o"})
                .code,
            cli::kExitConfig);
  EXPECT_EQ(run_cli({"evaluate", "--samples", toy_path("samples.jsonl"), "--drafts", toy_path("drafts.jsonl"),
                     "--matcher", "psychic", "--out", dir / "o"})
                .code,
            cli::kExitConfig);
  dir.write("bad.jsonl", "{\"id\": \"x\"}\n");
  EXPECT_EQ(run_cli({"evaluate", "--samples", dir / "bad.jsonl", "--drafts", toy_path("drafts.jsonl"), "--out",
                     dir / "o"})
                .code,
            cli::kExitData);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST(CliTest, UnreachableBackendAffectingEveryItemExitsThree) {
  TempDir dir;
  dir.write("backend.json",
            R"({"base_url": "http://127.0.0.1:1/v1", "model": "m", "max_retries": 0, "timeout_ms": 300})");
  const auto r = run_cli({"judge-eval", "--annotations", toy_path("judge_annotations.jsonl"), "--matcher",
                          "remote", "--backend-config", dir / "backend.json", "--out", dir / "o"});
  EXPECT_EQ(r.code, cli::kExitBackend) << r.err;
}

TEST(CliTest, DryRunWritesPlanOnly) {
  TempDir dir;
  const auto r = run_cli({"evaluate", "--samples", toy_path("samples.jsonl"), "--drafts", toy_path("drafts.jsonl"),
                          "--matcher", "remote", "--dry-run", "--out", dir / "plan"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto plan = nlohmann::json::parse(testing::slurp(dir / "plan/plan.json"));
  EXPECT_EQ(plan["dry_run"], true);
  EXPECT_FALSE(std::filesystem::exists(dir / "plan/summary.md"));
}

TEST(CliTest, JudgeEval) {
  TempDir dir;
  const auto r = run_cli({"judge-eval", "--annotations", toy_path("judge_annotations.jsonl"), "--out", dir / "j"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "j/judge_eval.csv"));
  EXPECT_NE(r.out.find("baseline"), std::string::npos);
}

TEST(CliTest, IapAndIaa) {
  TempDir dir;
  const auto iap = run_cli({"iap", "--multi", toy_path("multi.jsonl"), "--out", dir / "iap"});
  ASSERT_EQ(iap.code, 0) << iap.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "iap/iap_pairs.csv"));
  // 3 annotators: 6 ordered pairs plus header and two comment lines.
  EXPECT_EQ(line_count(testing::slurp(dir / "iap/iap_pairs.csv")), 9u);

  const auto iaa = run_cli({"iaa", "--multi", toy_path("multi.jsonl"), "--out", dir / "iaa"});
  ASSERT_EQ(iaa.code, 0) << iaa.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "iaa/strict_agreement.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "iaa/cosine.csv"));
}

TEST(CliTest, ThemeFrequencyOverSeveralCorpora) {
  TempDir dir;
  const auto r = run_cli({"theme-freq", "--responses", toy_path("samples.jsonl"), "--responses",
                          toy_path("drafts.jsonl"), "--responses", toy_path("multi.jsonl"), "--out", dir / "f"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = testing::slurp(dir / "f/theme_frequency.csv");
  // Two comments, header, nine labels, Total and Responses.
  EXPECT_EQ(line_count(csv), 14u);
}

TEST(CliTest, RagIndexThenPrompt) {
  TempDir dir;
  const auto idx = run_cli({"rag", "index", "--samples", toy_path("train.jsonl"), "--out", dir / "r"});
  ASSERT_EQ(idx.code, 0) << idx.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "r/rag_index.idx"));
  EXPECT_TRUE(std::filesystem::exists(dir / "r/rag_index.meta"));
  const auto prompts =
      run_cli({"rag", "prompt", "--queries", toy_path("samples.jsonl"), "--k", "3", "--out", dir / "r"});
  ASSERT_EQ(prompts.code, 0) << prompts.err;
  const auto body = testing::slurp(dir / "r/rag_prompts.jsonl");
  EXPECT_EQ(line_count(body), 6u);
  const auto first = nlohmann::json::parse(body.substr(0, body.find('\n')));
  EXPECT_NE(first.dump().find("Example 3"), std::string::npos);

  const auto missing = run_cli({"rag", "prompt", "--queries", toy_path("samples.jsonl"), "--index",
                                dir / "nothing", "--out", dir / "r2"});
  EXPECT_EQ(missing.code, cli::kExitData);
}

TEST(CliTest, Prompts) {
  TempDir dir;
  for (const char* kind : {"zero-shot", "thematic"}) {
    const auto r = run_cli({"prompt", "--samples", toy_path("samples.jsonl"), "--kind", kind, "--out", dir / kind});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(line_count(testing::slurp(dir / kind / "prompts.jsonl")), 6u);
  }
  EXPECT_EQ(run_cli({"prompt", "--samples", toy_path("samples.jsonl"), "--kind", "other", "--out", dir / "x"}).code,
            cli::kExitConfig);
}

TEST(CliTest, TadpoleTuplesAndPairs) {
  TempDir dir;
  const auto t = run_cli(
      {"tadpole", "tuples", "--bases", toy_path("train.jsonl"), "--generator", "echo", "--out", dir / "t"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(line_count(testing::slurp(dir / "t/tuples.jsonl")), 20u);
  const auto meta = nlohmann::json::parse(testing::slurp(dir / "t/tadpole_assignments.json"));
  EXPECT_EQ(meta["bases"], 20);

  // Echo tuples have identical sides, so every pair is skipped.
  const auto echo_pairs = run_cli({"tadpole", "pairs", "--tuples", dir / "t/tuples.jsonl", "--samples",
                                   toy_path("train.jsonl"), "--out", dir / "p"});
  ASSERT_EQ(echo_pairs.code, 0) << echo_pairs.err;
  EXPECT_EQ(testing::slurp(dir / "p/pairs.jsonl"), "");

  std::string tuples;
  for (int i = 1; i <= 9; ++i) {
    nlohmann::ordered_json j = {{"sample_id", "s" + std::to_string(i % 6 + 1)},
                                {"theme", "Medical Treatment"},
                                {"enhanced", "better " + std::to_string(i)},
                                {"base", "base " + std::to_string(i)},
                                {"corrupted", "worse " + std::to_string(i)}};
    tuples += j.dump() + "\n";
  }
  dir.write("tuples.jsonl", tuples);
  const auto blend = run_cli({"tadpole", "pairs", "--tuples", dir / "tuples.jsonl", "--samples",
                              toy_path("samples.jsonl"), "--strategy", "blend", "--out", dir / "b"});
  ASSERT_EQ(blend.code, 0) << blend.err;
  const auto body = testing::slurp(dir / "b/pairs.jsonl");
  ASSERT_EQ(line_count(body), 9u);
  std::map<std::string, int> per_strategy;
  std::istringstream in(body);
  for (std::string line; std::getline(in, line);) ++per_strategy[nlohmann::json::parse(line)["strategy"]];
  EXPECT_EQ(per_strategy["enhanced"], 3);
  EXPECT_EQ(per_strategy["corrupted"], 3);
  EXPECT_EQ(per_strategy["hard-corrupted"], 3);

  EXPECT_EQ(run_cli({"tadpole", "pairs", "--tuples", dir / "none.jsonl", "--samples", toy_path("samples.jsonl"),
                     "--out", dir / "n"})
                .code,
            cli::kExitData);
  EXPECT_EQ(run_cli({"tadpole", "pairs", "--tuples", dir / "tuples.jsonl", "--samples", toy_path("samples.jsonl"),
                     "--strategy", "soft", "--out", dir / "n"})
                .code,
            cli::kExitConfig);
}

}  // namespace
}  // namespace editjudge

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

// The `editjudge` command line. Every subcommand reads its inputs, writes
// its tables under --out and prints the main table to stdout. Exit codes:
// 0 success, 1 usage or configuration error, 2 invalid data, 3 backend
// failure affecting every item.

#ifndef EDITJUDGE_COMMANDS_H_
#define EDITJUDGE_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace editjudge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitBackend = 3;

struct RunConfig {
  std::string command;

  // Inputs.
  std::optional<std::filesystem::path> samples;
  std::optional<std::filesystem::path> drafts;
  std::optional<std::filesystem::path> annotations;
  std::optional<std::filesystem::path> multi;
  std::vector<std::filesystem::path> responses;
  std::optional<std::filesystem::path> index;
  std::optional<std::filesystem::path> queries;
  std::optional<std::filesystem::path> bases;
  std::optional<std::filesystem::path> tuples;

  // Backends.
  std::string matcher = "baseline";
  std::vector<std::string> judge_matchers = {"baseline"};
  std::string classifier = "baseline";
  std::string embedder = "baseline";
  std::string generator = "remote";
  std::optional<std::filesystem::path> backend_config;
  std::string span_policy = "strict";
  double tau = 0.6;

  // Text processing and metrics.
  std::string taxonomy = "default";
  std::optional<std::filesystem::path> abbreviations;
  bool split_semicolons = false;
  bool theme_presence = false;
  bool exclude_other = false;
  std::optional<std::filesystem::path> templates;

  // Adaptation.
  std::size_t k = 5;
  std::string prompt_kind = "zero-shot";
  std::string strategy = "hard-corrupted";
  bool dedup = false;

  // Run.
  std::filesystem::path out = "editjudge-out";
  std::size_t threads = 1;
  bool dry_run = false;
  std::uint64_t seed = 0;  // reserved; every default path is deterministic
};

// The effective configuration embedded in every report.
nlohmann::ordered_json to_json(const RunConfig& config);

// Runs one parsed command. Library exceptions propagate.
int execute(const RunConfig& config, std::ostream& out);

// Parses arguments (without the program name), runs the command and maps
// exceptions to exit codes. Messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

}  // namespace editjudge::cli

#endif  // EDITJUDGE_COMMANDS_H_

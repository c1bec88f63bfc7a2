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

// Report tables. Every table is written twice, as <name>.md and <name>.csv,
// and both files start with the effective run configuration: a fenced JSON
// block in markdown, '#'-prefixed comment lines in CSV.

#ifndef EDITJUDGE_REPORT_H_
#define EDITJUDGE_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "editjudge/analysis.h"
#include "editjudge/edit_metrics.h"
#include "editjudge/judge_eval.h"

namespace editjudge {

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_fraction(double value);  // 4 decimals
std::string format_optional(const std::optional<double>& value);  // "-" when absent

std::string to_markdown(const Table& table);
std::string to_csv(const Table& table);

class ReportWriter {
 public:
  // Creates `out_dir` if needed.
  ReportWriter(std::filesystem::path out_dir, nlohmann::ordered_json config);

  // <name>.md and <name>.csv, each written atomically.
  void write_table(const std::string& name, const Table& table) const;
  // Any other file, written atomically and verbatim.
  void write_file(const std::string& name, std::string_view contents) const;
  // config.json with the effective configuration.
  void write_config() const;

  const std::filesystem::path& out_dir() const { return out_dir_; }

 private:
  std::filesystem::path out_dir_;
  nlohmann::ordered_json config_;
};

// Evaluation tables.
Table summary_table(const ScoreReport& report);
Table adaptation_table(const std::vector<AdaptationSummary>& summaries);
Table sample_table(const ScoreReport& report);
Table classwise_table(const ScoreReport& report);
Table errored_table(const ScoreReport& report);
// Per-sample rows as JSON lines.
std::string sample_rows_jsonl(const ScoreReport& report);

Table judge_eval_table(const std::vector<JudgeEvalReport>& reports);

Table iap_summary_table(const IapReport& report);
Table iap_pairs_table(const IapReport& report);
Table iap_classwise_table(const IapReport& report);
Table strict_agreement_table(const StrictAgreementReport& report);
Table cosine_table(const CosineMatrix& matrix);
// Themes down, corpora across: sentence count, sentence and response
// fractions per corpus.
Table theme_frequency_table(const std::vector<ThemeFrequency>& corpora, const std::vector<std::string>& labels);

}  // namespace editjudge

#endif  // EDITJUDGE_REPORT_H_

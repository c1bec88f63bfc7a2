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

#include "editjudge/report.h"

#include <fmt/format.h>

#include "editjudge/error.h"
#include "editjudge/resources.h"

namespace editjudge {

namespace {

std::string md_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> prf_cells(const PRF& p) {
  return {format_fraction(p.precision), format_fraction(p.recall), format_fraction(p.f1)};
}

void append(std::vector<std::string>& row, const std::vector<std::string>& more) {
  row.insert(row.end(), more.begin(), more.end());
}

std::string count(std::size_t n) { return std::to_string(n); }

}  // namespace

std::string format_fraction(double value) { return fmt::format("{:.4f}", value); }

std::string format_optional(const std::optional<double>& value) {
  return value ? format_fraction(*value) : "-";
}

std::string to_markdown(const Table& table) {
  std::string out;
  if (!table.title.empty()) out += "## " + table.title + "\n\n";
  auto line = [&](const std::vector<std::string>& cells) {
    out += "|";
    for (const auto& c : cells) out += " " + md_cell(c) + " |";
    out += "\n";
  };
  line(table.header);
  out += "|";
  for (std::size_t i = 0; i < table.header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& r : table.rows) line(r);
  return out;
}

std::string to_csv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_cell(cells[i]);
    }
    out += "\n";
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out;
}

ReportWriter::ReportWriter(std::filesystem::path out_dir, nlohmann::ordered_json config)
    : out_dir_(std::move(out_dir)), config_(std::move(config)) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir_, ec);
  if (ec) throw ConfigError("cannot create output directory " + out_dir_.string() + ": " + ec.message());
}

void ReportWriter::write_table(const std::string& name, const Table& table) const {
  const std::string config = config_.dump(2);
  std::string md = "<!-- editjudge report: " + name + " -->\n\nRun configuration:\n\n```json\n" + config +
                   "\n```\n\n" + to_markdown(table);
  std::string csv;
  const std::string compact = config_.dump();
  csv += "# editjudge report: " + name + "\n# config: " + compact + "\n";
  csv += to_csv(table);
  resources::write_file_atomic(out_dir_ / (name + ".md"), md);
  resources::write_file_atomic(out_dir_ / (name + ".csv"), csv);
}

void ReportWriter::write_file(const std::string& name, std::string_view contents) const {
  resources::write_file_atomic(out_dir_ / name, contents);
}

void ReportWriter::write_config() const { write_file("config.json", config_.dump(2) + "\n"); }

Table summary_table(const ScoreReport& report) {
  Table t;
  t.title = "Micro-averaged edit-F1";
  t.header = {"Model",          "Adaptation",     "Samples",    "Content Precision", "Content Recall",
              "Content edit-F1", "Theme Precision", "Theme Recall", "Theme edit-F1"};
  auto row = [&](const GroupScores& g) {
    std::vector<std::string> r = {g.model, g.adaptation, count(g.samples)};
    append(r, prf_cells(g.content));
    append(r, prf_cells(g.theme));
    t.rows.push_back(std::move(r));
  };
  for (const auto& g : report.groups) row(g);
  row(report.overall);
  return t;
}

Table adaptation_table(const std::vector<AdaptationSummary>& summaries) {
  Table t;
  t.title = "Mean and standard deviation across models";
  t.header = {"Adaptation",          "Models",           "Content Precision", "Content Precision SD",
              "Content Recall",      "Content Recall SD", "Content edit-F1",  "Content edit-F1 SD",
              "Theme Precision",     "Theme Precision SD", "Theme Recall",    "Theme Recall SD",
              "Theme edit-F1",       "Theme edit-F1 SD"};
  for (const auto& s : summaries) {
    t.rows.push_back({s.adaptation, count(s.models), format_fraction(s.content_mean.precision),
                      format_fraction(s.content_std.precision), format_fraction(s.content_mean.recall),
                      format_fraction(s.content_std.recall), format_fraction(s.content_mean.f1),
                      format_fraction(s.content_std.f1), format_fraction(s.theme_mean.precision),
                      format_fraction(s.theme_std.precision), format_fraction(s.theme_mean.recall),
                      format_fraction(s.theme_std.recall), format_fraction(s.theme_mean.f1),
                      format_fraction(s.theme_std.f1)});
  }
  return t;
}

Table sample_table(const ScoreReport& report) {
  Table t;
  t.title = "Per-sample results";
  t.header = {"Sample",           "Model",         "Adaptation",   "Expert sentences", "Draft sentences",
              "EM",               "EA",            "ED",           "Content Precision", "Content Recall",
              "Content edit-F1",  "Theme TP",      "Theme FP",     "Theme FN",          "Theme edit-F1"};
  for (const auto& r : report.rows) {
    std::vector<std::string> row = {r.sample_id,         r.model,          r.adaptation,
                                    count(r.expert_sentences), count(r.draft_sentences), count(r.counts.em),
                                    count(r.counts.ea),  count(r.counts.ed)};
    append(row, prf_cells(r.content));
    append(row, {count(r.theme_tally.tp), count(r.theme_tally.fp), count(r.theme_tally.fn),
                 format_fraction(r.theme.f1)});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table classwise_table(const ScoreReport& report) {
  Table t;
  t.title = "Per-theme results";
  t.header = {"Theme",           "Expert sentences", "Matched", "Content Recall", "Theme TP",
              "Theme FP",        "Theme FN",         "Theme Precision", "Theme Recall", "Theme edit-F1"};
  const GroupScores& g = report.overall;
  for (std::size_t l = 0; l < report.labels.size(); ++l) {
    const ThemeTally& tally = g.theme_per_class.at(l);
    std::vector<std::string> row = {report.labels[l], count(g.classwise.total.at(l)),
                                    count(g.classwise.matched.at(l)), format_optional(g.classwise.recall(l)),
                                    count(tally.tp), count(tally.fp), count(tally.fn)};
    append(row, prf_cells(prf_from_counts(tally.tp, tally.fp, tally.fn)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table errored_table(const ScoreReport& report) {
  Table t;
  t.title = "Errored samples";
  t.header = {"Sample", "Model", "Adaptation", "Reason"};
  for (const auto& e : report.errored) t.rows.push_back({e.sample_id, e.model, e.adaptation, e.reason});
  return t;
}

std::string sample_rows_jsonl(const ScoreReport& report) {
  std::string out;
  for (const auto& r : report.rows) {
    nlohmann::ordered_json j = {
        {"sample_id", r.sample_id},
        {"model", r.model},
        {"adaptation", r.adaptation},
        {"expert_sentences", r.expert_sentences},
        {"draft_sentences", r.draft_sentences},
        {"em", r.counts.em},
        {"ea", r.counts.ea},
        {"ed", r.counts.ed},
        {"content", {{"precision", r.content.precision}, {"recall", r.content.recall}, {"f1", r.content.f1}}},
        {"theme_tally", {{"tp", r.theme_tally.tp}, {"fp", r.theme_tally.fp}, {"fn", r.theme_tally.fn}}},
        {"theme", {{"precision", r.theme.precision}, {"recall", r.theme.recall}, {"f1", r.theme.f1}}}};
    out += j.dump() + "\n";
  }
  return out;
}

Table judge_eval_table(const std::vector<JudgeEvalReport>& reports) {
  Table t;
  t.title = "Judge agreement with human annotations";
  t.header = {"Matcher", "Agreement", "Non-match agreement", "Match agreement", "Match overlap",
              "N",       "Gold matches", "Gold non-matches", "Errored"};
  for (const auto& r : reports) {
    t.rows.push_back({r.matcher, format_fraction(r.agreement), format_fraction(r.non_match_agreement),
                      format_fraction(r.match_agreement), format_fraction(r.match_overlap), count(r.n),
                      count(r.n_gold_match), count(r.n_gold_no_match), count(r.errored)});
  }
  return t;
}

Table iap_summary_table(const IapReport& report) {
  Table t;
  t.title = "Inter-annotator predictability";
  t.header = {"Annotators",         "Ordered pairs",  "Comparisons",   "Errored",
              "Content Precision",  "Content Recall", "Content edit-F1", "Theme Precision",
              "Theme Recall",       "Theme edit-F1"};
  std::vector<std::string> row = {count(report.annotators.size()), count(report.ordered_pairs),
                                  count(report.pair_count), count(report.errored)};
  append(row, prf_cells(report.content));
  append(row, prf_cells(report.theme));
  t.rows.push_back(std::move(row));
  return t;
}

Table iap_pairs_table(const IapReport& report) {
  Table t;
  t.title = "Inter-annotator predictability per ordered pair";
  t.header = {"Reference",        "Draft",          "Comparisons",     "EM", "EA", "ED",
              "Content Precision", "Content Recall", "Content edit-F1", "Theme Precision",
              "Theme Recall",     "Theme edit-F1"};
  for (const auto& p : report.pairs) {
    std::vector<std::string> row = {p.expert,        p.draft,         count(p.comparisons),
                                    count(p.counts.em), count(p.counts.ea), count(p.counts.ed)};
    append(row, prf_cells(p.content));
    append(row, prf_cells(p.theme));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table iap_classwise_table(const IapReport& report) {
  Table t;
  t.title = "Inter-annotator predictability per theme";
  t.header = {"Theme", "Reference sentences", "Matched", "Content Recall", "Theme Precision", "Theme Recall",
              "Theme edit-F1"};
  for (std::size_t l = 0; l < report.labels.size(); ++l) {
    const ThemeTally& tally = report.theme_per_class.at(l);
    std::vector<std::string> row = {report.labels[l], count(report.classwise.total.at(l)),
                                    count(report.classwise.matched.at(l)),
                                    format_optional(report.classwise.recall(l))};
    append(row, prf_cells(prf_from_counts(tally.tp, tally.fp, tally.fn)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table strict_agreement_table(const StrictAgreementReport& report) {
  Table t;
  t.title = "Strict theme agreement over " + count(report.samples) + " samples";
  t.header = {"Theme", "Strict inclusion", "Strict exclusion", "Strict agreement"};
  for (const auto& r : report.rows) {
    t.rows.push_back({r.label, format_fraction(r.strict_inclusion), format_fraction(r.strict_exclusion),
                      format_fraction(r.strict_agreement)});
  }
  return t;
}

Table cosine_table(const CosineMatrix& matrix) {
  Table t;
  t.title = "Mean pairwise cosine similarity";
  t.header = {"Annotator"};
  append(t.header, matrix.annotators);
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    std::vector<std::string> row = {matrix.annotators[i]};
    for (std::size_t j = 0; j < matrix.size(); ++j) row.push_back(format_optional(matrix.at(i, j)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table theme_frequency_table(const std::vector<ThemeFrequency>& corpora, const std::vector<std::string>& labels) {
  Table t;
  t.title = "Theme frequency";
  t.header = {"Theme"};
  for (const auto& c : corpora) {
    append(t.header, {c.corpus + " sentences", c.corpus + " sentence fraction", c.corpus + " response fraction"});
  }
  for (std::size_t l = 0; l < labels.size(); ++l) {
    std::vector<std::string> row = {labels[l]};
    for (const auto& c : corpora) {
      append(row, {count(c.counts.at(l)), format_fraction(c.sentence_fraction.at(l)),
                   format_fraction(c.response_fraction.at(l))});
    }
    t.rows.push_back(std::move(row));
  }
  std::vector<std::string> total = {"Total"};
  for (const auto& c : corpora) {
    double sum = 0.0;
    for (double f : c.sentence_fraction) sum += f;
    append(total, {count(c.sentences), format_fraction(sum), ""});
  }
  t.rows.push_back(std::move(total));
  std::vector<std::string> responses = {"Responses"};
  for (const auto& c : corpora) append(responses, {"", "", count(c.responses)});
  t.rows.push_back(std::move(responses));
  return t;
}

}  // namespace editjudge

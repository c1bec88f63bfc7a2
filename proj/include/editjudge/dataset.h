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

// JSON-lines readers and writers for every record kind.
//
// A file is accepted as a whole or rejected with a DataError naming the
// first offending line. Blank lines are skipped. Text fields are normalized
// on load (line endings to "\n", ends trimmed) and otherwise left verbatim.
//
//   sample:     {"id", "message", "chart_summary", "response", "annotator_id"?}
//   draft:      {"sample_id", "draft", "model", "adaptation"}
//   multi:      {"id", "message", "chart_summary",
//                "responses": [{"annotator_id", "response"}]}
//   annotation: {"expert_sentence", "draft", "gold": "NO MATCH" | span}

#ifndef EDITJUDGE_DATASET_H_
#define EDITJUDGE_DATASET_H_

#include <filesystem>
#include <istream>
#include <string>
#include <variant>
#include <vector>

#include "editjudge/types.h"

namespace editjudge {

enum class DatasetKind { kSingleResponse, kMultiResponse, kDrafts, kJudgeAnnotations };

using Dataset = std::variant<std::vector<MessageSample>, std::vector<MultiResponseSample>,
                             std::vector<DraftRecord>, std::vector<JudgeAnnotation>>;

Dataset load_dataset(const std::filesystem::path& path, DatasetKind kind);

std::vector<MessageSample> load_samples(const std::filesystem::path& path);
std::vector<DraftRecord> load_drafts(const std::filesystem::path& path);
std::vector<MultiResponseSample> load_multi(const std::filesystem::path& path);
std::vector<JudgeAnnotation> load_judge_annotations(const std::filesystem::path& path);

// Stream variants; `origin` names the source in error messages.
std::vector<MessageSample> parse_samples(std::istream& in, const std::string& origin);
std::vector<DraftRecord> parse_drafts(std::istream& in, const std::string& origin);
std::vector<MultiResponseSample> parse_multi(std::istream& in, const std::string& origin);
std::vector<JudgeAnnotation> parse_judge_annotations(std::istream& in, const std::string& origin);

std::string to_jsonl(const std::vector<MessageSample>& records);
std::string to_jsonl(const std::vector<DraftRecord>& records);
std::string to_jsonl(const std::vector<MultiResponseSample>& records);
std::string to_jsonl(const std::vector<JudgeAnnotation>& records);

// Guesses the kind from the keys of the first record.
DatasetKind sniff_kind(const std::filesystem::path& path);

}  // namespace editjudge

#endif  // EDITJUDGE_DATASET_H_

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

#ifndef EDITJUDGE_TYPES_H_
#define EDITJUDGE_TYPES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace editjudge {

// One patient message, its chart summary and the clinician's reply.
struct MessageSample {
  std::string id;
  std::string message;
  std::string chart_summary;
  std::string response;
  std::optional<std::string> annotator_id;

  bool operator==(const MessageSample&) const = default;
};

// A model-written reply for the sample `sample_id`.
struct DraftRecord {
  std::string sample_id;
  std::string draft;
  std::string model;
  std::string adaptation;

  bool operator==(const DraftRecord&) const = default;
};

struct AnnotatorResponse {
  std::string annotator_id;
  std::string response;

  bool operator==(const AnnotatorResponse&) const = default;
};

// Several clinicians answering the same message.
struct MultiResponseSample {
  std::string id;
  std::string message;
  std::string chart_summary;
  std::vector<AnnotatorResponse> responses;

  const AnnotatorResponse* find(const std::string& annotator_id) const;

  bool operator==(const MultiResponseSample&) const = default;
};

// Verdict of a content judge: either a span of the draft that carries the
// same meaning as the expert sentence, or no match. `offset` is an optional
// hint for where the span starts in the draft it was judged against.
class MatchDecision {
 public:
  static MatchDecision no_match() { return MatchDecision(); }
  static MatchDecision match(std::string span, std::optional<std::size_t> offset = std::nullopt) {
    MatchDecision d;
    d.span_ = std::move(span);
    d.offset_ = offset;
    return d;
  }

  bool is_match() const { return span_.has_value(); }
  // Precondition: is_match().
  const std::string& span() const { return *span_; }
  std::optional<std::size_t> offset() const { return offset_; }

  // Offsets are a locating hint, not part of the verdict.
  bool operator==(const MatchDecision& other) const { return span_ == other.span_; }

 private:
  std::optional<std::string> span_;
  std::optional<std::size_t> offset_;
};

inline constexpr char kNoMatchLiteral[] = "NO MATCH";

struct JudgeAnnotation {
  std::string expert_sentence;
  std::string draft;
  MatchDecision gold;

  bool operator==(const JudgeAnnotation&) const = default;
};

}  // namespace editjudge

#endif  // EDITJUDGE_TYPES_H_

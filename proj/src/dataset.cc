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

#include "editjudge/dataset.h"

#include <fstream>
#include <set>
#include <tuple>
#include <functional>

#include <nlohmann/json.hpp>

#include "editjudge/error.h"
#include "editjudge/text.h"

namespace editjudge {

const AnnotatorResponse* MultiResponseSample::find(const std::string& annotator_id) const {
  for (const auto& r : responses) {
    if (r.annotator_id == annotator_id) return &r;
  }
  return nullptr;
}

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Context for one line, so field accessors can raise located errors.
struct Line {
  const std::string& origin;
  std::size_t number;
  const json& obj;

  [[noreturn]] void fail(const std::string& reason) const { throw DataError(origin, number, reason); }

  std::string str(const char* key, bool required_non_empty) const {
    if (!obj.contains(key)) fail(std::string("missing field \"") + key + "\"");
    const auto& v = obj[key];
    if (!v.is_string()) fail(std::string("field \"") + key + "\" must be a string");
    std::string s = text::normalize_field(v.get<std::string>());
    if (required_non_empty && s.empty()) fail(std::string("field \"") + key + "\" is empty");
    return s;
  }

  std::optional<std::string> opt_str(const char* key) const {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    if (!obj[key].is_string()) fail(std::string("field \"") + key + "\" must be a string");
    return text::normalize_field(obj[key].get<std::string>());
  }
};

template <typename Record>
std::vector<Record> parse_lines(std::istream& in, const std::string& origin,
                                const std::function<Record(const Line&)>& parse_one) {
  std::vector<Record> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (text::trim(raw).empty()) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw DataError(origin, number, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw DataError(origin, number, "record must be a JSON object");
    out.push_back(parse_one(Line{origin, number, obj}));
  }
  if (in.bad()) throw DataError(origin, 0, "read error");
  return out;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string(), 0, "cannot open file");
  return in;
}

}  // namespace

std::vector<MessageSample> parse_samples(std::istream& in, const std::string& origin) {
  std::set<std::string> ids;
  return parse_lines<MessageSample>(in, origin, [&](const Line& l) {
    MessageSample s;
    s.id = l.str("id", true);
    s.message = l.str("message", true);
    s.chart_summary = l.str("chart_summary", false);
    s.response = l.str("response", true);
    s.annotator_id = l.opt_str("annotator_id");
    if (!ids.insert(s.id).second) l.fail("duplicate id '" + s.id + "'");
    return s;
  });
}

std::vector<DraftRecord> parse_drafts(std::istream& in, const std::string& origin) {
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  return parse_lines<DraftRecord>(in, origin, [&](const Line& l) {
    DraftRecord d;
    d.sample_id = l.str("sample_id", true);
    d.draft = l.str("draft", true);
    d.model = l.str("model", true);
    d.adaptation = l.str("adaptation", true);
    if (!keys.emplace(d.sample_id, d.model, d.adaptation).second) {
      l.fail("duplicate draft for sample '" + d.sample_id + "' (model '" + d.model +
             "', adaptation '" + d.adaptation + "')");
    }
    return d;
  });
}

std::vector<MultiResponseSample> parse_multi(std::istream& in, const std::string& origin) {
  std::set<std::string> ids;
  return parse_lines<MultiResponseSample>(in, origin, [&](const Line& l) {
    MultiResponseSample m;
    m.id = l.str("id", true);
    m.message = l.str("message", true);
    m.chart_summary = l.str("chart_summary", false);
    if (!l.obj.contains("responses") || !l.obj["responses"].is_array()) {
      l.fail("field \"responses\" must be an array");
    }
    std::set<std::string> annotators;
    for (const auto& item : l.obj["responses"]) {
      if (!item.is_object()) l.fail("each response must be an object");
      Line sub{l.origin, l.number, item};
      AnnotatorResponse r;
      r.annotator_id = sub.str("annotator_id", true);
      r.response = sub.str("response", true);
      if (!annotators.insert(r.annotator_id).second) {
        l.fail("annotator '" + r.annotator_id + "' answers twice");
      }
      m.responses.push_back(std::move(r));
    }
    if (annotators.size() < 2) l.fail("needs responses from at least 2 annotators");
    if (!ids.insert(m.id).second) l.fail("duplicate id '" + m.id + "'");
    return m;
  });
}

std::vector<JudgeAnnotation> parse_judge_annotations(std::istream& in, const std::string& origin) {
  std::size_t record = 0;
  return parse_lines<JudgeAnnotation>(in, origin, [&](const Line& l) {
    ++record;
    JudgeAnnotation a;
    a.expert_sentence = l.str("expert_sentence", true);
    a.draft = l.str("draft", true);
    const std::string gold = l.str("gold", true);
    if (gold == kNoMatchLiteral) {
      a.gold = MatchDecision::no_match();
    } else {
      const auto pos = a.draft.find(gold);
      if (pos == std::string::npos) {
        l.fail("record " + std::to_string(record) + ": gold span is not a verbatim substring of the draft");
      }
      a.gold = MatchDecision::match(gold, pos);
    }
    return a;
  });
}

std::vector<MessageSample> load_samples(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_samples(in, path.string());
}

std::vector<DraftRecord> load_drafts(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_drafts(in, path.string());
}

std::vector<MultiResponseSample> load_multi(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_multi(in, path.string());
}

std::vector<JudgeAnnotation> load_judge_annotations(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_judge_annotations(in, path.string());
}

Dataset load_dataset(const std::filesystem::path& path, DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kSingleResponse:
      return load_samples(path);
    case DatasetKind::kMultiResponse:
      return load_multi(path);
    case DatasetKind::kDrafts:
      return load_drafts(path);
    case DatasetKind::kJudgeAnnotations:
      return load_judge_annotations(path);
  }
  throw DataError(path.string(), 0, "unknown dataset kind");
}

DatasetKind sniff_kind(const std::filesystem::path& path) {
  auto in = open(path);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (text::trim(raw).empty()) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw DataError(path.string(), number, std::string("malformed JSON: ") + e.what());
    }
    if (obj.contains("responses")) return DatasetKind::kMultiResponse;
    if (obj.contains("draft") && obj.contains("sample_id")) return DatasetKind::kDrafts;
    if (obj.contains("expert_sentence")) return DatasetKind::kJudgeAnnotations;
    if (obj.contains("response")) return DatasetKind::kSingleResponse;
    throw DataError(path.string(), number, "cannot tell which record kind this file holds");
  }
  throw DataError(path.string(), 0, "file has no records");
}

std::string to_jsonl(const std::vector<MessageSample>& records) {
  std::string out;
  for (const auto& s : records) {
    ojson j;
    j["id"] = s.id;
    j["message"] = s.message;
    j["chart_summary"] = s.chart_summary;
    j["response"] = s.response;
    if (s.annotator_id) j["annotator_id"] = *s.annotator_id;
    out += j.dump() + "\n";
  }
  return out;
}

std::string to_jsonl(const std::vector<DraftRecord>& records) {
  std::string out;
  for (const auto& d : records) {
    ojson j;
    j["sample_id"] = d.sample_id;
    j["draft"] = d.draft;
    j["model"] = d.model;
    j["adaptation"] = d.adaptation;
    out += j.dump() + "\n";
  }
  return out;
}

std::string to_jsonl(const std::vector<MultiResponseSample>& records) {
  std::string out;
  for (const auto& m : records) {
    ojson j;
    j["id"] = m.id;
    j["message"] = m.message;
    j["chart_summary"] = m.chart_summary;
    j["responses"] = ojson::array();
    for (const auto& r : m.responses) {
      j["responses"].push_back({{"annotator_id", r.annotator_id}, {"response", r.response}});
    }
    out += j.dump() + "\n";
  }
  return out;
}

std::string to_jsonl(const std::vector<JudgeAnnotation>& records) {
  std::string out;
  for (const auto& a : records) {
    ojson j;
    j["expert_sentence"] = a.expert_sentence;
    j["draft"] = a.draft;
    j["gold"] = a.gold.is_match() ? a.gold.span() : std::string(kNoMatchLiteral);
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace editjudge

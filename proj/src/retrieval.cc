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

#include "editjudge/retrieval.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "editjudge/error.h"
#include "editjudge/kernels.h"
#include "editjudge/parallel.h"
#include "editjudge/resources.h"
#include "editjudge/text.h"

namespace editjudge {

namespace {

constexpr char kMagic[8] = {'E', 'J', 'I', 'D', 'X', 0, 0, 0};
constexpr std::size_t kHeaderSize = 64;
constexpr std::size_t kNameField = 40;

template <typename T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

std::filesystem::path with_suffix(const std::filesystem::path& base, const char* suffix) {
  return std::filesystem::path(base.string() + suffix);
}

}  // namespace

std::string rag_key_text(const MessageSample& sample) { return sample.message + "\n" + sample.chart_summary; }

RetrievalIndex::RetrievalIndex(std::size_t dimension, std::string embedder_name)
    : dimension_(dimension), embedder_name_(std::move(embedder_name)) {
  if (dimension_ == 0) throw std::invalid_argument("retrieval index: dimension must be positive");
  if (embedder_name_.size() > kNameField) embedder_name_.resize(kNameField);
}

void RetrievalIndex::add(IndexEntry entry, std::span<const float> vector) {
  if (vector.size() != dimension_) {
    throw std::invalid_argument("retrieval index: vector of dimension " + std::to_string(vector.size()) +
                                " in an index of dimension " + std::to_string(dimension_));
  }
  if (!ids_.insert(entry.id).second) throw DataError("retrieval index: duplicate sample id '" + entry.id + "'");
  vectors_.insert(vectors_.end(), vector.begin(), vector.end());
  norms_.push_back(std::sqrt(kernels::squared_norm(vector)));
  entries_.push_back(std::move(entry));
}

bool RetrievalIndex::operator==(const RetrievalIndex& o) const {
  return dimension_ == o.dimension_ && embedder_name_ == o.embedder_name_ && entries_ == o.entries_ &&
         vectors_.size() == o.vectors_.size() &&
         std::memcmp(vectors_.data(), o.vectors_.data(), vectors_.size() * sizeof(float)) == 0;
}

void RetrievalIndex::save(const std::filesystem::path& base) const {
  std::string idx;
  idx.reserve(kHeaderSize + vectors_.size() * sizeof(float));
  idx.append(kMagic, sizeof(kMagic));
  put_le<std::uint32_t>(idx, kFormatVersion);
  put_le<std::uint32_t>(idx, static_cast<std::uint32_t>(dimension_));
  put_le<std::uint64_t>(idx, entries_.size());
  idx.append(embedder_name_);
  idx.append(kHeaderSize - idx.size(), '\0');
  for (float f : vectors_) put_le<std::uint32_t>(idx, std::bit_cast<std::uint32_t>(f));

  std::string meta;
  for (const auto& e : entries_) {
    nlohmann::ordered_json j = {
        {"id", e.id}, {"message", e.message}, {"chart_summary", e.chart_summary}, {"response", e.response}};
    meta += j.dump() + "\n";
  }
  // The header count is checked against the sidecar on load, so a torn pair
  // from an interrupted save is rejected rather than misread.
  resources::write_file_atomic(with_suffix(base, ".meta"), meta);
  resources::write_file_atomic(with_suffix(base, ".idx"), idx);
}

RetrievalIndex RetrievalIndex::load(const std::filesystem::path& base) {
  const auto idx_path = with_suffix(base, ".idx");
  const auto meta_path = with_suffix(base, ".meta");
  std::string idx;
  std::string meta;
  try {
    idx = resources::read_file(idx_path);
    meta = resources::read_file(meta_path);
  } catch (const ConfigError& e) {
    throw DataError(e.what());
  }
  const std::string where = idx_path.string();
  if (idx.size() < kHeaderSize || std::memcmp(idx.data(), kMagic, sizeof(kMagic)) != 0) {
    throw DataError(where, 0, "not an index file");
  }
  const auto version = get_le<std::uint32_t>(idx.data() + 8);
  if (version != kFormatVersion) {
    throw DataError(where, 0, "unsupported index version " + std::to_string(version));
  }
  const auto dim = get_le<std::uint32_t>(idx.data() + 12);
  const auto count = get_le<std::uint64_t>(idx.data() + 16);
  const char* name_begin = idx.data() + 24;
  const std::string name(name_begin, strnlen(name_begin, kNameField));
  if (dim == 0) throw DataError(where, 0, "dimension is zero");
  if (idx.size() != kHeaderSize + count * dim * sizeof(float)) {
    throw DataError(where, 0, "size does not match the header (" + std::to_string(count) + " x " +
                                  std::to_string(dim) + ")");
  }

  RetrievalIndex index(dim, name);
  std::istringstream in(meta);
  std::string line;
  std::size_t line_no = 0;
  std::vector<float> row(dim);
  const char* data = idx.data() + kHeaderSize;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    if (index.size() == count) throw DataError(meta_path.string(), line_no, "more entries than vectors");
    IndexEntry e;
    try {
      const auto j = nlohmann::json::parse(line);
      e.id = j.at("id").get<std::string>();
      e.message = j.at("message").get<std::string>();
      e.chart_summary = j.at("chart_summary").get<std::string>();
      e.response = j.at("response").get<std::string>();
    } catch (const nlohmann::json::exception& ex) {
      throw DataError(meta_path.string(), line_no, ex.what());
    }
    for (std::size_t d = 0; d < dim; ++d) {
      row[d] = std::bit_cast<float>(get_le<std::uint32_t>(data + (index.size() * dim + d) * sizeof(float)));
    }
    try {
      index.add(std::move(e), row);
    } catch (const DataError& ex) {
      throw DataError(meta_path.string(), line_no, ex.what());
    }
  }
  if (index.size() != count) {
    throw DataError(meta_path.string(), 0,
                    std::to_string(index.size()) + " entries for " + std::to_string(count) + " vectors");
  }
  return index;
}

RetrievalIndex build_index(const std::vector<MessageSample>& training, const Embedder& embedder,
                           std::size_t threads) {
  if (training.empty()) throw std::invalid_argument("build_index: no training samples");
  std::set<std::string_view> seen;
  for (const auto& s : training) {
    if (!seen.insert(s.id).second) throw DataError("build_index: duplicate sample id '" + s.id + "'");
  }
  std::vector<std::vector<float>> vectors(training.size());
  parallel_for(training.size(), threads,
               [&](std::size_t i) { vectors[i] = embedder.embed(rag_key_text(training[i])); });
  RetrievalIndex index(vectors.front().size(), embedder.name());
  for (std::size_t i = 0; i < training.size(); ++i) {
    const auto& s = training[i];
    index.add({s.id, s.message, s.chart_summary, s.response}, vectors[i]);
  }
  return index;
}

std::vector<Retrieved> retrieve_topk(const RetrievalIndex& index, std::span<const float> query, std::size_t k,
                                     std::string_view exclude_id) {
  if (k == 0) throw std::invalid_argument("retrieve_topk: k must be at least 1");
  if (query.size() != index.dimension()) {
    throw std::invalid_argument("retrieve_topk: query dimension " + std::to_string(query.size()) +
                                " does not match index dimension " + std::to_string(index.dimension()));
  }
  std::vector<double> dots(index.size());
  kernels::dot_rows(query, index.vectors(), index.dimension(), dots);
  const double qn = std::sqrt(kernels::squared_norm(query));

  std::vector<Retrieved> all;
  all.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (!exclude_id.empty() && index.entries()[i].id == exclude_id) continue;
    const double denom = qn * index.norm(i);
    const double score = denom == 0.0 ? 0.0 : std::clamp(dots[i] / denom, -1.0, 1.0);
    all.push_back({i, score});
  }
  const std::size_t n = std::min(k, all.size());
  std::stable_sort(all.begin(), all.end(), [](const Retrieved& a, const Retrieved& b) { return a.score > b.score; });
  all.resize(n);
  return all;
}

std::vector<Retrieved> retrieve_topk(const RetrievalIndex& index, const MessageSample& query, std::size_t k,
                                     const Embedder& embedder) {
  const auto v = embedder.embed(rag_key_text(query));
  return retrieve_topk(index, v, k, query.id);
}

std::string build_rag_prompt(const MessageSample& query, const std::vector<const IndexEntry*>& examples,
                             const PromptLibrary& prompts) {
  require_placeholders(prompts.zero_shot, "zero_shot", {"message", "chart_summary"});
  const std::string zero_shot =
      render_template(prompts.zero_shot, {{"message", query.message}, {"chart_summary", query.chart_summary}});
  if (examples.empty()) return zero_shot;
  require_placeholders(prompts.rag_examples, "rag_examples", {"examples"});
  require_placeholders(prompts.rag_example, "rag_example", {"message", "chart_summary", "response"});
  std::string blocks;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const std::string index = std::to_string(i + 1);
    blocks += render_template(prompts.rag_example, {{"index", index},
                                                    {"message", examples[i]->message},
                                                    {"chart_summary", examples[i]->chart_summary},
                                                    {"response", examples[i]->response}});
  }
  if (!blocks.empty() && blocks.back() == '\n') blocks.pop_back();
  return render_template(prompts.rag_examples, {{"examples", blocks}}) + zero_shot;
}

}  // namespace editjudge

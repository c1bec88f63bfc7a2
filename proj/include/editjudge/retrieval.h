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

// Exact nearest-neighbour index over embedded (message, chart summary) keys,
// used to put the most similar answered messages into a prompt.
//
// On disk an index is two files:
//
//   <name>.idx   64-byte header, then count * dim float32 values, row-major,
//                little endian. Header: "EJIDX\0\0\0", u32 version, u32 dim,
//                u64 count, 40-byte zero-padded embedder name.
//   <name>.meta  one JSON object per entry, in row order:
//                {"id", "message", "chart_summary", "response"}

#ifndef EDITJUDGE_RETRIEVAL_H_
#define EDITJUDGE_RETRIEVAL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "editjudge/backends.h"
#include "editjudge/prompts.h"
#include "editjudge/types.h"

namespace editjudge {

// Message, a newline, then the chart summary.
std::string rag_key_text(const MessageSample& sample);

struct IndexEntry {
  std::string id;
  std::string message;
  std::string chart_summary;
  std::string response;

  bool operator==(const IndexEntry&) const = default;
};

class RetrievalIndex {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  RetrievalIndex(std::size_t dimension, std::string embedder_name);

  // Throws DataError on a duplicate id, std::invalid_argument on a vector of
  // the wrong dimension.
  void add(IndexEntry entry, std::span<const float> vector);

  std::size_t size() const { return entries_.size(); }
  std::size_t dimension() const { return dimension_; }
  const std::string& embedder_name() const { return embedder_name_; }
  const std::vector<IndexEntry>& entries() const { return entries_; }
  std::span<const float> row(std::size_t i) const { return {vectors_.data() + i * dimension_, dimension_}; }
  std::span<const float> vectors() const { return vectors_; }
  double norm(std::size_t i) const { return norms_[i]; }

  // Writes <base>.idx and <base>.meta, each atomically.
  void save(const std::filesystem::path& base) const;
  // Throws DataError on a malformed or inconsistent pair of files.
  static RetrievalIndex load(const std::filesystem::path& base);

  bool operator==(const RetrievalIndex& o) const;

 private:
  std::size_t dimension_;
  std::string embedder_name_;
  std::vector<IndexEntry> entries_;
  std::vector<float> vectors_;
  std::vector<double> norms_;
  std::set<std::string, std::less<>> ids_;
};

// Embeds every sample's key text. Throws std::invalid_argument on an empty
// set, DataError on duplicate ids; embedder errors propagate and nothing is
// returned.
RetrievalIndex build_index(const std::vector<MessageSample>& training, const Embedder& embedder,
                           std::size_t threads = 1);

struct Retrieved {
  std::size_t entry;  // row in the index
  double score;       // cosine similarity
};

// Top k rows by cosine similarity, descending; equal scores keep row order.
// Rows whose id equals `exclude_id` are skipped. Throws std::invalid_argument
// for k == 0 or a query of the wrong dimension.
std::vector<Retrieved> retrieve_topk(const RetrievalIndex& index, std::span<const float> query, std::size_t k,
                                     std::string_view exclude_id = {});
std::vector<Retrieved> retrieve_topk(const RetrievalIndex& index, const MessageSample& query, std::size_t k,
                                     const Embedder& embedder);

// Retrieved examples in order, then the zero-shot prompt for the query. With
// no examples the result is exactly the zero-shot prompt.
std::string build_rag_prompt(const MessageSample& query, const std::vector<const IndexEntry*>& examples,
                             const PromptLibrary& prompts);

}  // namespace editjudge

#endif  // EDITJUDGE_RETRIEVAL_H_

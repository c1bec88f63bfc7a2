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

// Fixtures shared by the unit tests and the acceptance binary.

#ifndef EDITJUDGE_TESTS_TEST_SUPPORT_H_
#define EDITJUDGE_TESTS_TEST_SUPPORT_H_

#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "editjudge/backends.h"
#include "editjudge/error.h"
#include "editjudge/taxonomy.h"
#include "editjudge/types.h"

namespace editjudge::testing {

inline std::filesystem::path toy_path(const std::string& name) {
  return std::filesystem::path(EDITJUDGE_TOY_DIR) / name;
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("editjudge-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, std::string_view contents) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Every regular file under `dir`, keyed by relative path.
inline std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), dir).string()] = slurp(e.path());
  }
  return out;
}

// Themes "T0".."T{n-1}" with no keywords.
inline ThemeTaxonomy numbered_taxonomy(std::size_t n) {
  std::vector<ThemeDef> defs;
  for (std::size_t i = 0; i < n; ++i) defs.push_back({"T" + std::to_string(i), "theme " + std::to_string(i), {}});
  return ThemeTaxonomy(std::move(defs));
}

// Labels a sentence by the first token of the form "tK" (K a theme index);
// anything else is Other.
class TagClassifier : public ThemeClassifier {
 public:
  ThemeLabel classify(std::string_view sentence, const ThemeTaxonomy& taxonomy) const override {
    std::istringstream in{std::string(sentence)};
    std::string word;
    while (in >> word) {
      if (word.size() >= 2 && word[0] == 't' && std::isdigit(static_cast<unsigned char>(word[1]))) {
        const std::size_t k = std::stoul(word.substr(1));
        if (k < taxonomy.theme_count()) return ThemeLabel(k);
      }
    }
    return taxonomy.other();
  }
  std::string name() const override { return "tag"; }
};

// Replays a fixed table of decisions keyed by (expert sentence, draft).
class ReplayMatcher : public ContentMatcher {
 public:
  void set(std::string expert, std::string draft, MatchDecision d) {
    table_[{std::move(expert), std::move(draft)}] = std::move(d);
  }
  MatchDecision match(std::string_view expert_sentence, std::string_view draft) const override {
    const auto it = table_.find({std::string(expert_sentence), std::string(draft)});
    if (it == table_.end()) throw BackendError("no replay entry");
    return it->second;
  }
  std::string name() const override { return "replay"; }

 private:
  std::map<std::pair<std::string, std::string>, MatchDecision> table_;
};

// Distinct, deterministic enhanced and corrupted texts.
class TaggingGenerator : public TextGenerator {
 public:
  std::string generate(const GenerationRequest& request) const override {
    return (request.task == "enhance" ? "Enhanced: " : "Corrupted: ") + request.source_text;
  }
  std::string name() const override { return "tagging"; }
};

// Random sentences over a closed vocabulary. Words from different
// vocabularies never share a token.
inline std::string random_sentence(std::mt19937_64& rng, const std::vector<std::string>& vocab,
                                   std::size_t min_words = 3, std::size_t max_words = 8) {
  std::uniform_int_distribution<std::size_t> len(min_words, max_words);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  const std::size_t n = len(rng);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    std::string w = vocab[pick(rng)];
    if (i == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    if (i) s += ' ';
    s += w;
  }
  return s + ".";
}

inline std::vector<std::string> make_vocab(const std::string& prefix, std::size_t n) {
  static const char* const kStems[] = {"alpha", "bravo", "delta", "gamma", "kilo", "lima", "oscar", "romeo",
                                       "sierra", "tango", "victor", "zulu", "quartz", "ember", "fjord",
                                       "grove"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + kStems[i % 16] + std::to_string(i / 16));
  return out;
}

}  // namespace editjudge::testing

#endif  // EDITJUDGE_TESTS_TEST_SUPPORT_H_

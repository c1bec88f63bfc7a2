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

// Backends that call an LLM service speaking the common chat-completions /
// embeddings HTTP shape:
//
//   POST {base_url}/chat/completions
//     {"model", "messages": [{"role": "user", "content"}], "temperature"}
//     -> {"choices": [{"message": {"content"}}]}
//   POST {base_url}/embeddings
//     {"model", "input"} -> {"data": [{"embedding": [...]}]}
//
// A bearer token is read from the environment variable named in the config.

#ifndef EDITJUDGE_REMOTE_H_
#define EDITJUDGE_REMOTE_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "editjudge/backends.h"

namespace editjudge {

struct RemoteBackendConfig {
  std::string base_url;
  std::string model;
  std::string embedding_model;  // empty: use `model`
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.0;
  std::size_t max_concurrency = 4;
  std::size_t max_retries = 3;
  std::chrono::milliseconds timeout{60000};
  std::chrono::milliseconds initial_backoff{500};

  // Throws ConfigError.
  void validate() const;
};

// JSON object with the field names above; durations as
// "timeout_ms" / "initial_backoff_ms".
RemoteBackendConfig parse_backend_config(std::string_view json_text, const std::string& origin);
RemoteBackendConfig load_backend_config(const std::filesystem::path& path);

// Shared HTTP client. At most `max_concurrency` requests are in flight at
// once across all threads using the same client. Each logical request is
// tried at most 1 + max_retries times with exponential backoff; transport
// errors, 429 and 5xx are retried, other statuses are not.
class LlmClient {
 public:
  explicit LlmClient(RemoteBackendConfig config);
  ~LlmClient();

  std::string complete(std::string_view prompt) const;
  std::vector<float> embed(std::string_view input) const;

  const RemoteBackendConfig& config() const { return config_; }
  std::size_t attempts() const { return attempts_.load(); }
  std::size_t requests() const { return requests_.load(); }

 private:
  std::string post_json(const std::string& path, const std::string& body) const;

  RemoteBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::string bearer_;
  mutable std::counting_semaphore<1 << 20> slots_;
  mutable std::atomic<std::size_t> attempts_{0};
  mutable std::atomic<std::size_t> requests_{0};
};

// Renders the judge template, parses "NO MATCH" (case, surrounding quotes
// and trailing period ignored) or a span, and passes spans through
// validate_span under `policy`. Rejected spans become no match.
class RemoteMatcher : public ContentMatcher {
 public:
  RemoteMatcher(std::shared_ptr<const LlmClient> client, std::string judge_template, SpanPolicy policy);

  MatchDecision match(std::string_view expert_sentence, std::string_view draft) const override;
  std::string name() const override { return "remote"; }

  // Parsing step on its own, for testing.
  MatchDecision interpret(std::string_view output, std::string_view draft) const;

  std::size_t downgraded() const { return downgraded_.load(); }
  std::size_t repaired() const { return repaired_.load(); }

 private:
  std::shared_ptr<const LlmClient> client_;
  std::string template_;
  SpanPolicy policy_;
  mutable std::atomic<std::size_t> downgraded_{0};
  mutable std::atomic<std::size_t> repaired_{0};
};

// Outputs outside the label set map to "Other" with a warning.
class RemoteClassifier : public ThemeClassifier {
 public:
  RemoteClassifier(std::shared_ptr<const LlmClient> client, std::string classify_template);

  ThemeLabel classify(std::string_view sentence, const ThemeTaxonomy& taxonomy) const override;
  std::string name() const override { return "remote"; }

  static ThemeLabel interpret(std::string_view output, const ThemeTaxonomy& taxonomy, bool* recognized);

 private:
  std::shared_ptr<const LlmClient> client_;
  std::string template_;
};

// The first response fixes the dimension; later mismatches are errors.
class RemoteEmbedder : public Embedder {
 public:
  explicit RemoteEmbedder(std::shared_ptr<const LlmClient> client);

  std::vector<float> embed(std::string_view text) const override;
  std::string name() const override { return "remote"; }

 private:
  std::shared_ptr<const LlmClient> client_;
  mutable std::atomic<std::size_t> dimension_{0};
};

class RemoteGenerator : public TextGenerator {
 public:
  explicit RemoteGenerator(std::shared_ptr<const LlmClient> client);

  std::string generate(const GenerationRequest& request) const override;
  std::string name() const override { return "remote"; }
  std::size_t max_concurrency() const override;

 private:
  std::shared_ptr<const LlmClient> client_;
};

}  // namespace editjudge

#endif  // EDITJUDGE_REMOTE_H_

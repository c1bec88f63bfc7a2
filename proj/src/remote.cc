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

#include "editjudge/remote.h"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "editjudge/error.h"
#include "editjudge/prompts.h"
#include "editjudge/resources.h"
#include "editjudge/text.h"

namespace editjudge {

using json = nlohmann::json;

void RemoteBackendConfig::validate() const {
  if (base_url.rfind("http://", 0) != 0 && base_url.rfind("https://", 0) != 0) {
    throw ConfigError("backend config: base_url must start with http:// or https://");
  }
  if (model.empty()) throw ConfigError("backend config: model is required");
  if (max_concurrency < 1) throw ConfigError("backend config: max_concurrency must be >= 1");
  if (!(temperature >= 0.0)) throw ConfigError("backend config: temperature must be >= 0");
  if (timeout.count() <= 0) throw ConfigError("backend config: timeout must be positive");
  if (initial_backoff.count() < 0) throw ConfigError("backend config: backoff must be >= 0");
}

RemoteBackendConfig parse_backend_config(std::string_view json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(origin + ": backend config must be a JSON object");
  RemoteBackendConfig c;
  try {
    c.base_url = doc.at("base_url").get<std::string>();
    c.model = doc.at("model").get<std::string>();
    c.embedding_model = doc.value("embedding_model", std::string());
    c.api_key_env = doc.value("api_key_env", c.api_key_env);
    c.temperature = doc.value("temperature", c.temperature);
    const auto concurrency = doc.value("max_concurrency", static_cast<long long>(c.max_concurrency));
    const auto retries = doc.value("max_retries", static_cast<long long>(c.max_retries));
    if (concurrency < 1) throw ConfigError(origin + ": max_concurrency must be >= 1");
    if (retries < 0) throw ConfigError(origin + ": max_retries must be >= 0");
    c.max_concurrency = static_cast<std::size_t>(concurrency);
    c.max_retries = static_cast<std::size_t>(retries);
    c.timeout = std::chrono::milliseconds(doc.value("timeout_ms", c.timeout.count()));
    c.initial_backoff = std::chrono::milliseconds(doc.value("initial_backoff_ms", c.initial_backoff.count()));
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  while (!c.base_url.empty() && c.base_url.back() == '/') c.base_url.pop_back();
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return c;
}

RemoteBackendConfig load_backend_config(const std::filesystem::path& path) {
  return parse_backend_config(resources::read_file(path), path.string());
}

LlmClient::LlmClient(RemoteBackendConfig config)
    : config_(std::move(config)), slots_(static_cast<std::ptrdiff_t>(config_.max_concurrency)) {
  config_.validate();
  const auto scheme_end = config_.base_url.find("://") + 3;
  const auto path_start = config_.base_url.find('/', scheme_end);
  scheme_host_port_ = config_.base_url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : config_.base_url.substr(path_start);
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key) {
      bearer_ = key;
    } else {
      spdlog::debug("environment variable {} is not set; sending requests without a token",
                    config_.api_key_env);
    }
  }
}

LlmClient::~LlmClient() = default;

std::string LlmClient::post_json(const std::string& path, const std::string& body) const {
  requests_.fetch_add(1);
  std::string last_error;
  for (std::size_t attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(config_.initial_backoff * (1LL << std::min<std::size_t>(attempt - 1, 16)));
    }
    httplib::Result res{nullptr, httplib::Error::Unknown};
    {
      slots_.acquire();
      attempts_.fetch_add(1);
      httplib::Client cli(scheme_host_port_);
      const auto secs = config_.timeout.count() / 1000;
      const auto usecs = (config_.timeout.count() % 1000) * 1000;
      cli.set_connection_timeout(secs, usecs);
      cli.set_read_timeout(secs, usecs);
      cli.set_write_timeout(secs, usecs);
      httplib::Headers headers;
      if (!bearer_.empty()) headers.emplace("Authorization", "Bearer " + bearer_);
      res = cli.Post(path_prefix_ + path, headers, body, "application/json");
      slots_.release();
    }
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status >= 200 && res->status < 300) {
      return res->body;
    } else {
      last_error = "HTTP " + std::to_string(res->status);
      if (res->status != 429 && res->status < 500) break;
    }
    spdlog::debug("{}{} attempt {} failed: {}", config_.base_url, path, attempt + 1, last_error);
  }
  throw BackendError(config_.base_url + path + ": " + last_error);
}

std::string LlmClient::complete(std::string_view prompt) const {
  json req = {{"model", config_.model},
              {"messages", json::array({{{"role", "user"}, {"content", std::string(prompt)}}})},
              {"temperature", config_.temperature}};
  const std::string body = post_json("/chat/completions", req.dump());
  try {
    const auto doc = json::parse(body);
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw BackendError(std::string("unparseable chat completion: ") + e.what());
  }
}

std::vector<float> LlmClient::embed(std::string_view input) const {
  json req = {{"model", config_.embedding_model.empty() ? config_.model : config_.embedding_model},
              {"input", std::string(input)}};
  const std::string body = post_json("/embeddings", req.dump());
  try {
    const auto doc = json::parse(body);
    return doc.at("data").at(0).at("embedding").get<std::vector<float>>();
  } catch (const json::exception& e) {
    throw BackendError(std::string("unparseable embedding response: ") + e.what());
  }
}

namespace {

// Trim, then peel matching quotes/backticks and a trailing period.
std::string strip_decorations(std::string_view s) {
  std::string_view v = text::trim(s);
  bool changed = true;
  while (changed && v.size() >= 2) {
    changed = false;
    const char f = v.front();
    if ((f == '"' || f == '\'' || f == '`') && v.back() == f) {
      v = text::trim(v.substr(1, v.size() - 2));
      changed = true;
    }
  }
  return std::string(v);
}

bool is_no_match(std::string_view output) {
  std::string v = strip_decorations(output);
  while (!v.empty() && (v.back() == '.' || v.back() == '!')) v.pop_back();
  std::string upper = text::collapse_whitespace(v);
  for (char& c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return upper == kNoMatchLiteral;
}

}  // namespace

RemoteMatcher::RemoteMatcher(std::shared_ptr<const LlmClient> client, std::string judge_template,
                             SpanPolicy policy)
    : client_(std::move(client)), template_(std::move(judge_template)), policy_(policy) {
  require_placeholders(template_, "judge", {"expert_sentence", "draft"});
}

MatchDecision RemoteMatcher::interpret(std::string_view output, std::string_view draft) const {
  if (text::trim(output).empty()) throw BackendError("judge returned an empty answer");
  if (is_no_match(output)) return MatchDecision::no_match();
  std::string span = strip_decorations(output);
  // Prefer the raw answer when it is already verbatim (quotes can be part of
  // the draft text).
  auto v = validate_span(output, draft, SpanPolicy::kStrict);
  if (!v.decision.is_match()) v = validate_span(span, draft, policy_);
  switch (v.outcome) {
    case SpanValidation::Outcome::kExact:
      break;
    case SpanValidation::Outcome::kWhitespaceRepaired:
    case SpanValidation::Outcome::kFuzzyRepaired:
      repaired_.fetch_add(1);
      break;
    case SpanValidation::Outcome::kRejected:
      downgraded_.fetch_add(1);
      spdlog::warn("judge span is not in the draft under {} policy; treating as NO MATCH: \"{}\"",
                   span_policy_name(policy_), span);
      break;
  }
  return v.decision;
}

MatchDecision RemoteMatcher::match(std::string_view expert_sentence, std::string_view draft) const {
  const std::string prompt =
      render_template(template_, {{"expert_sentence", expert_sentence}, {"draft", draft}});
  return interpret(client_->complete(prompt), draft);
}

RemoteClassifier::RemoteClassifier(std::shared_ptr<const LlmClient> client, std::string classify_template)
    : client_(std::move(client)), template_(std::move(classify_template)) {
  require_placeholders(template_, "classify", {"sentence", "labels"});
}

ThemeLabel RemoteClassifier::interpret(std::string_view output, const ThemeTaxonomy& taxonomy,
                                       bool* recognized) {
  std::string v = strip_decorations(output);
  if (v.rfind("- ", 0) == 0) v = strip_decorations(v.substr(2));
  while (!v.empty() && v.back() == '.') v.pop_back();
  if (auto label = taxonomy.find_loose(v)) {
    if (recognized) *recognized = true;
    return *label;
  }
  if (recognized) *recognized = false;
  return taxonomy.other();
}

ThemeLabel RemoteClassifier::classify(std::string_view sentence, const ThemeTaxonomy& taxonomy) const {
  std::string labels;
  for (const auto& name : taxonomy.label_names()) labels += "- " + name + "\n";
  if (!labels.empty()) labels.pop_back();
  const std::string prompt = render_template(template_, {{"sentence", sentence}, {"labels", labels}});
  const std::string output = client_->complete(prompt);
  bool recognized = false;
  const ThemeLabel label = interpret(output, taxonomy, &recognized);
  if (!recognized) spdlog::warn("classifier answered an unknown label \"{}\"; using Other", output);
  return label;
}

RemoteEmbedder::RemoteEmbedder(std::shared_ptr<const LlmClient> client) : client_(std::move(client)) {}

std::vector<float> RemoteEmbedder::embed(std::string_view text) const {
  auto v = client_->embed(text);
  if (v.empty()) throw BackendError("embedding endpoint returned an empty vector");
  std::size_t expected = 0;
  if (!dimension_.compare_exchange_strong(expected, v.size()) && expected != v.size()) {
    throw BackendError("embedding dimension changed from " + std::to_string(expected) + " to " +
                       std::to_string(v.size()));
  }
  return v;
}

RemoteGenerator::RemoteGenerator(std::shared_ptr<const LlmClient> client) : client_(std::move(client)) {}

std::string RemoteGenerator::generate(const GenerationRequest& request) const {
  std::string out = std::string(text::trim(client_->complete(request.prompt)));
  if (out.empty()) throw BackendError("generator returned an empty answer");
  return out;
}

std::size_t RemoteGenerator::max_concurrency() const { return client_->config().max_concurrency; }

}  // namespace editjudge

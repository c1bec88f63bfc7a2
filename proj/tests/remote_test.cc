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
#include <future>
#include <vector>

#include <gtest/gtest.h>

#include "editjudge/edit_metrics.h"
#include "editjudge/error.h"
#include "editjudge/prompts.h"
#include "mock_llm_server.h"
#include "test_support.h"

namespace editjudge {
namespace {

using testing::MockLlmServer;
using testing::MockReply;
using testing::prompt_field;

std::shared_ptr<const LlmClient> client_for(const MockLlmServer& server, std::size_t concurrency = 2,
                                            std::size_t retries = 2) {
  return std::make_shared<const LlmClient>(server.config(concurrency, retries));
}

TEST(BackendConfigTest, ParsesAllFields) {
  const auto c = parse_backend_config(R"({"base_url": "http://localhost:8000/v1/", "model": "m",
      "embedding_model": "e", "api_key_env": "KEY", "temperature": 0.5, "max_concurrency": 7,
      "max_retries": 0, "timeout_ms": 1500, "initial_backoff_ms": 20})",
                                      "cfg");
  EXPECT_EQ(c.base_url, "http://localhost:8000/v1");
  EXPECT_EQ(c.model, "m");
  EXPECT_EQ(c.embedding_model, "e");
  EXPECT_EQ(c.api_key_env, "KEY");
  EXPECT_DOUBLE_EQ(c.temperature, 0.5);
  EXPECT_EQ(c.max_concurrency, 7u);
  EXPECT_EQ(c.max_retries, 0u);
  EXPECT_EQ(c.timeout.count(), 1500);
  EXPECT_EQ(c.initial_backoff.count(), 20);
}

TEST(BackendConfigTest, RejectsBadValues) {
  EXPECT_THROW(parse_backend_config("not json", "cfg"), ConfigError);
  EXPECT_THROW(parse_backend_config("[]", "cfg"), ConfigError);
  EXPECT_THROW(parse_backend_config(R"({"model": "m"})", "cfg"), ConfigError);
  EXPECT_THROW(parse_backend_config(R"({"base_url": "ftp://x", "model": "m"})", "cfg"), ConfigError);
  EXPECT_THROW(parse_backend_config(R"({"base_url": "http://x", "model": ""})", "cfg"), ConfigError);
  EXPECT_THROW(parse_backend_config(R"({"base_url": "http://x", "model": "m", "max_concurrency": 0})", "cfg"),
               ConfigError);
  EXPECT_THROW(parse_backend_config(R"({"base_url": "http://x", "model": "m", "max_retries": -1})", "cfg"),
               ConfigError);
  EXPECT_THROW(parse_backend_config(R"({"base_url": "http://x", "model": "m", "timeout_ms": 0})", "cfg"),
               ConfigError);
  try {
    parse_backend_config(R"({"base_url": "http://x"})", "my.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("my.json"), std::string::npos);
  }
  testing::TempDir dir;
  EXPECT_ANY_THROW(load_backend_config(dir / "absent.json"));
}

TEST(LlmClientTest, CompletesAndEmbeds) {
  MockLlmServer server([](const std::string& endpoint, const std::string& text, std::size_t) {
    MockReply r;
    if (endpoint == "chat") r.content = "echo: " + text;
    else r.embedding = {1.0f, 2.0f, static_cast<float>(text.size())};
    return r;
  });
  ::setenv("EDITJUDGE_TEST_KEY", "sekret", 1);
  auto config = server.config(1, 0);
  config.api_key_env = "EDITJUDGE_TEST_KEY";
  LlmClient client(config);
  EXPECT_EQ(client.complete("hi"), "echo: hi");
  EXPECT_EQ(server.last_authorization(), "Bearer sekret");
  EXPECT_EQ(client.embed("abcd"), (std::vector<float>{1.0f, 2.0f, 4.0f}));
  EXPECT_EQ(client.requests(), 2u);
  EXPECT_EQ(client.attempts(), 2u);
  ::unsetenv("EDITJUDGE_TEST_KEY");
}

TEST(LlmClientTest, InFlightRequestsStayWithinTheLimit) {
  MockLlmServer server(
      [](const std::string&, const std::string& text, std::size_t) { return MockReply{200, text, {}}; },
      std::chrono::milliseconds(20));
  const auto client = client_for(server, 3, 0);
  std::vector<std::future<std::string>> calls;
  for (int i = 0; i < 12; ++i) {
    calls.push_back(std::async(std::launch::async, [&client, i] { return client->complete(std::to_string(i)); }));
  }
  for (int i = 0; i < 12; ++i) EXPECT_EQ(calls[i].get(), std::to_string(i));
  EXPECT_LE(server.peak_in_flight(), 3u);
  EXPECT_GE(server.peak_in_flight(), 2u);
  EXPECT_EQ(server.received(), 12u);
}

TEST(LlmClientTest, RetriesServerErrorsAndRateLimits) {
  MockLlmServer server([](const std::string&, const std::string&, std::size_t n) {
    if (n == 1) return MockReply{500, "", {}};
    if (n == 2) return MockReply{429, "", {}};
    return MockReply{200, "finally", {}};
  });
  const auto client = client_for(server, 1, 2);
  EXPECT_EQ(client->complete("x"), "finally");
  EXPECT_EQ(client->attempts(), 3u);
  EXPECT_EQ(client->requests(), 1u);
}

TEST(LlmClientTest, GivesUpAfterMaxRetries) {
  MockLlmServer server([](const std::string&, const std::string&, std::size_t) { return MockReply{503, "", {}}; });
  const auto client = client_for(server, 1, 2);
  EXPECT_THROW(client->complete("x"), BackendError);
  EXPECT_EQ(client->attempts(), 3u);
  EXPECT_EQ(server.received(), 3u);
}

TEST(LlmClientTest, ClientErrorsAreNotRetried) {
  MockLlmServer server([](const std::string&, const std::string&, std::size_t) { return MockReply{400, "", {}}; });
  const auto client = client_for(server, 1, 3);
  EXPECT_THROW(client->complete("x"), BackendError);
  EXPECT_EQ(client->attempts(), 1u);
}

TEST(LlmClientTest, TransportErrorsAreBackendErrors) {
  RemoteBackendConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.model = "m";
  c.max_retries = 1;
  c.timeout = std::chrono::milliseconds(500);
  c.initial_backoff = std::chrono::milliseconds(1);
  LlmClient client(c);
  EXPECT_THROW(client.complete("x"), BackendError);
  EXPECT_EQ(client.attempts(), 2u);
}

TEST(RemoteMatcherTest, PromptCarriesBothTexts) {
  MockLlmServer server([](const std::string&, const std::string& text, std::size_t) {
    return MockReply{200, prompt_field(text, "Expert sentence") + "|" + prompt_field(text, "Draft"), {}};
  });
  const RemoteMatcher m(client_for(server), PromptLibrary::load().judge, SpanPolicy::kStrict);
  // The echoed "expert|draft" is not in the draft, so it is downgraded.
  EXPECT_FALSE(m.match("Rest well.", "Drink water. Rest.").is_match());
  EXPECT_EQ(m.downgraded(), 1u);
}

TEST(RemoteMatcherTest, VerbatimSpansAndNoMatchVariants) {
  const std::string draft = "Drink water. Rest for two days.";
  MockLlmServer server([](const std::string&, const std::string& text, std::size_t) {
    const auto expert = prompt_field(text, "Expert sentence");
    if (expert == "a") return MockReply{200, "Rest for two days.", {}};
    if (expert == "b") return MockReply{200, "\"no match.\"", {}};
    if (expert == "c") return MockReply{200, "  NO MATCH  ", {}};
    if (expert == "d") return MockReply{200, "\"Drink water.\"", {}};
    return MockReply{200, "   ", {}};
  });
  const RemoteMatcher m(client_for(server), PromptLibrary::load().judge, SpanPolicy::kStrict);
  const auto a = m.match("a", draft);
  ASSERT_TRUE(a.is_match());
  EXPECT_EQ(a.span(), "Rest for two days.");
  EXPECT_EQ(a.offset(), 13u);
  EXPECT_FALSE(m.match("b", draft).is_match());
  EXPECT_FALSE(m.match("c", draft).is_match());
  const auto d = m.match("d", draft);
  ASSERT_TRUE(d.is_match());
  EXPECT_EQ(d.span(), "Drink water.");
  EXPECT_THROW(m.match("e", draft), BackendError);
  EXPECT_EQ(m.downgraded(), 0u);
}

TEST(RemoteMatcherTest, ParaphrasesDowngradeUnderStrictAndRepairUnderFuzzy) {
  const std::string draft = "Please drink plenty of water today.";
  MockLlmServer server(
      [](const std::string&, const std::string&, std::size_t) { return MockReply{200, "drink plenty of water", {}}; });
  MockLlmServer fuzzy_server([](const std::string&, const std::string&, std::size_t) {
    return MockReply{200, "drink plenty of water todays", {}};
  });
  const auto judge = PromptLibrary::load().judge;

  // Exact substring: accepted by both policies.
  const RemoteMatcher exact(client_for(server), judge, SpanPolicy::kStrict);
  EXPECT_TRUE(exact.match("x", draft).is_match());

  const RemoteMatcher strict(client_for(fuzzy_server), judge, SpanPolicy::kStrict);
  EXPECT_FALSE(strict.match("x", draft).is_match());
  EXPECT_EQ(strict.downgraded(), 1u);

  const RemoteMatcher fuzzy(client_for(fuzzy_server), judge, SpanPolicy::kFuzzy);
  const auto d = fuzzy.match("x", draft);
  ASSERT_TRUE(d.is_match());
  EXPECT_NE(draft.find(d.span()), std::string::npos);
  EXPECT_EQ(fuzzy.repaired(), 1u);
  EXPECT_EQ(fuzzy.downgraded(), 0u);
}

TEST(RemoteMatcherTest, WhitespaceDifferencesAreRepairedEvenWhenStrict) {
  MockLlmServer server([](const std::string&, const std::string&, std::size_t) { return MockReply{}; });
  const RemoteMatcher m(client_for(server), PromptLibrary::load().judge, SpanPolicy::kStrict);
  const std::string draft = "Call the  clinic\ntomorrow. Thanks.";
  const auto d = m.interpret("Call the clinic tomorrow.", draft);
  ASSERT_TRUE(d.is_match());
  EXPECT_EQ(d.span(), "Call the  clinic\ntomorrow.");
  EXPECT_EQ(m.repaired(), 1u);
}

TEST(RemoteMatcherTest, StrictSpansNeverBecomeUnlocatable) {
  MockLlmServer server([](const std::string&, const std::string& text, std::size_t) {
    const auto expert = prompt_field(text, "Expert sentence");
    if (expert.find("water") != std::string::npos) return MockReply{200, "Drink lots of water.", {}};
    return MockReply{200, "Rest.", {}};
  });
  const RemoteMatcher m(client_for(server), PromptLibrary::load().judge, SpanPolicy::kStrict);
  Segmenter seg;
  const auto r = count_edits("Drink water often. Rest up.", "Drink water. Rest.", m, seg);
  EXPECT_EQ(r.unlocatable_spans, 0u);
  EXPECT_EQ(r.counts.em, 1u);
  EXPECT_EQ(r.counts.ea, 1u);
  EXPECT_EQ(r.counts.ed, 1u);
  EXPECT_EQ(m.downgraded(), 1u);
}

TEST(RemoteMatcherTest, TemplateNeedsPlaceholders) {
  MockLlmServer server([](const std::string&, const std::string&, std::size_t) { return MockReply{}; });
  EXPECT_THROW(RemoteMatcher(client_for(server), "no slots", SpanPolicy::kStrict), ConfigError);
}

TEST(RemoteClassifierTest, KnownAndUnknownLabels) {
  const auto tax = default_taxonomy();
  MockLlmServer server([](const std::string&, const std::string& text, std::size_t) {
    if (text.find("refill") != std::string::npos) return MockReply{200, "- Medical Treatment.", {}};
    if (text.find("weird") != std::string::npos) return MockReply{200, "Billing", {}};
    return MockReply{200, "\"Logistical Information\"", {}};
  });
  const RemoteClassifier c(client_for(server), PromptLibrary::load().classify);
  EXPECT_EQ(tax.name(c.classify("Need a refill.", tax)), "Medical Treatment");
  EXPECT_EQ(tax.name(c.classify("Clinic hours.", tax)), "Logistical Information");
  EXPECT_EQ(c.classify("weird one", tax), tax.other());

  bool recognized = true;
  EXPECT_EQ(RemoteClassifier::interpret("other", tax, &recognized), tax.other());
  EXPECT_TRUE(recognized);
  RemoteClassifier::interpret("nonsense", tax, &recognized);
  EXPECT_FALSE(recognized);
}

TEST(RemoteEmbedderTest, DimensionIsFixedByTheFirstResponse) {
  MockLlmServer server([](const std::string&, const std::string& text, std::size_t) {
    MockReply r;
    r.embedding.assign(text.size(), 0.5f);
    return r;
  });
  const RemoteEmbedder e(client_for(server));
  EXPECT_EQ(e.embed("abc").size(), 3u);
  EXPECT_EQ(e.embed("xyz").size(), 3u);
  EXPECT_THROW(e.embed("four"), BackendError);
  EXPECT_THROW(e.embed(""), BackendError);
}

TEST(RemoteGeneratorTest, TrimsAndRejectsEmpty) {
  MockLlmServer server([](const std::string&, const std::string& text, std::size_t) {
    return MockReply{200, text == "blank" ? "  \n" : "  rewritten\n", {}};
  });
  const RemoteGenerator g(client_for(server, 5));
  EXPECT_EQ(g.generate({"go", "src", "enhance"}), "rewritten");
  EXPECT_THROW(g.generate({"blank", "src", "enhance"}), BackendError);
  EXPECT_EQ(g.max_concurrency(), 5u);
}

}  // namespace
}  // namespace editjudge

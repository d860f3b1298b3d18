// Copyright 2026 The Counterpoint Authors
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

#include <doctest.h>

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "counterpoint/context/context.hpp"
#include "counterpoint/core/digest.hpp"
#include "support.hpp"

using namespace counterpoint;
using namespace counterpoint::context;
using counterpoint::llm::TemplateId;
using testing::code_of;

namespace {

std::vector<SearchSnippet> five_snippets() {
  std::vector<SearchSnippet> out;
  for (int i = 1; i <= 5; ++i) {
    out.push_back({"Result " + std::to_string(i), "https://news.example/" + std::to_string(i),
                   "Snippet number " + std::to_string(i) + ".", i});
  }
  return out;
}

const Document& indictment_doc() {
  static const Document doc = ingest_document(
      "Prosecutors argue the statute of limitations has not expired. The indictment lists 34 counts. Critics call "
      "the case political.",
      "The indictment, explained", Lean::Neutral);
  return doc;
}

}  // namespace

TEST_CASE("fetch_context passes fixture snippets through with ranks") {
  MockSearchProvider search;
  auto snippets = five_snippets();
  snippets.push_back({"Extra", "u", "sixth", 0});
  search.add("Monetary policy", snippets);
  const auto out = fetch_context(search, "Monetary policy");
  REQUIRE(out.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(out[i].rank == i + 1);
    CHECK(out[i].title == "Result " + std::to_string(i + 1));
  }
  CHECK(fetch_context(search, "Monetary policy", 2).size() == 2);
}

TEST_CASE("fetch_context drops empty snippets and keeps ranks contiguous") {
  MockSearchProvider search;
  search.add("q", {{"a", "u", "one", 0}, {"b", "u", "  ", 0}, {"c", "u", "three", 0}});
  const auto out = fetch_context(search, "q");
  REQUIRE(out.size() == 2);
  CHECK(out[1].title == "c");
  CHECK(out[1].rank == 2);
}

TEST_CASE("fetch_context failure and empty cases") {
  MockSearchProvider search;
  search.add_failure("slow", ErrorCode::Timeout);
  CHECK(code_of([&] { fetch_context(search, "slow"); }) == ErrorCode::SearchUnavailable);
  CHECK(fetch_context(search, "nothing known").empty());
  CHECK(code_of([&] { fetch_context(search, " "); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("summarize_context uses the fixture and is deterministic") {
  const auto& doc = indictment_doc();
  llm::FixtureSet f;
  f.add_completion(TemplateId::ContextSummarize, short_digest(doc.title()), {"A neutral summary.", std::nullopt});
  auto provider = std::make_shared<testing::RecordingProvider>(f);
  const auto gw = testing::make_gateway(provider);
  const Clock fixed = [] { return std::int64_t{1700000000000}; };
  const auto a = summarize_context(doc, five_snippets(), gw, {}, fixed);
  CHECK(a.summary_text == "A neutral summary.");
  CHECK_FALSE(a.article_only);
  CHECK(a.generated_at_ms == 1700000000000);
  CHECK(a == summarize_context(doc, five_snippets(), gw, {}, fixed));
  const auto prompt = provider->requests().front().prompt;
  CHECK(prompt.find("[3] Result 3 (https://news.example/3)\nSnippet number 3.") != std::string::npos);
}

TEST_CASE("summarize_context falls back to the article") {
  const auto& doc = indictment_doc();
  auto provider = std::make_shared<testing::RecordingProvider>();
  const auto gw = testing::make_gateway(provider);
  const auto s = summarize_context(doc, {}, gw);
  CHECK(s.article_only);
  CHECK_FALSE(s.summary_text.empty());
  CHECK(provider->requests().front().prompt.find("The indictment lists 34 counts.") != std::string::npos);
}

TEST_CASE("selection mode rule") {
  CHECK(selection_mode("statute of limitations") == ExplanationMode::Context);
  CHECK(selection_mode("indictment") == ExplanationMode::Definition);
  CHECK(selection_mode("  \"indictment,\" ") == ExplanationMode::Definition);
  CHECK(selection_mode("well-known") == ExplanationMode::Definition);
  CHECK(selection_mode("two words") == ExplanationMode::Context);
}

TEST_CASE("explain_selection") {
  const auto& doc = indictment_doc();
  auto provider = std::make_shared<testing::RecordingProvider>();
  const auto gw = testing::make_gateway(provider);
  const auto e = explain_selection(doc, {22, 44}, gw);
  CHECK(e.selected_text == "statute of limitations");
  CHECK(e.mode == ExplanationMode::Context);
  CHECK_FALSE(e.explanation.empty());
  const auto prompt = provider->requests().back().prompt;
  CHECK(prompt.find("If it's one word, provide its definition.") != std::string::npos);

  const auto d = explain_selection(doc, {66, 76}, gw);
  CHECK(d.selected_text == "indictment");
  CHECK(d.mode == ExplanationMode::Definition);

  CHECK(code_of([&] { explain_selection(doc, {100, 500}, gw); }) == ErrorCode::SpanOutOfRange);
}

TEST_CASE("selection context window is bounded at 200 code points per side") {
  std::string body = std::string(300, 'a') + " target " + std::string(300, 'b');
  const auto doc = ingest_document(body, "t", Lean::Neutral);
  auto provider = std::make_shared<testing::RecordingProvider>();
  const auto gw = testing::make_gateway(provider);
  explain_selection(doc, {301, 307}, gw);
  const auto prompt = provider->requests().back().prompt;
  CHECK(prompt.find("\n" + std::string(199, 'a') + " target " + std::string(199, 'b') + "\n") != std::string::npos);
  CHECK(prompt.find(std::string(200, 'a')) == std::string::npos);
}

TEST_CASE("http search provider against a local server") {
  httplib::Server server;
  server.Get("/api/search", [](const httplib::Request& req, httplib::Response& res) {
    if (req.get_param_value("api_key") != "secret") {
      res.status = 401;
      return;
    }
    nlohmann::json body = {{"organic_results", nlohmann::json::array()}};
    for (int i = 0; i < 3; ++i) {
      body["organic_results"].push_back({{"title", req.get_param_value("q") + " " + std::to_string(i)},
                                         {"link", "https://x/" + std::to_string(i)},
                                         {"snippet", "s" + std::to_string(i)}});
    }
    res.set_content(body.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  HttpSearchProvider ok({"http://127.0.0.1:" + std::to_string(port) + "/api", "secret"});
  const auto out = fetch_context(ok, "rates");
  REQUIRE(out.size() == 3);
  CHECK(out[0].title == "rates 0");
  CHECK(out[2].url == "https://x/2");
  CHECK(out[2].rank == 3);

  HttpSearchProvider bad_key({"http://127.0.0.1:" + std::to_string(port) + "/api", "wrong"});
  CHECK(code_of([&] { fetch_context(bad_key, "rates"); }) == ErrorCode::SearchUnavailable);

  server.stop();
  t.join();
  CHECK(code_of([&] { fetch_context(ok, "rates"); }) == ErrorCode::SearchUnavailable);
}

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

#include <atomic>
#include <cmath>
#include <numeric>

#include "counterpoint/core/digest.hpp"
#include "counterpoint/error.hpp"
#include "counterpoint/llm/gateway.hpp"
#include "counterpoint/llm/http_provider.hpp"
#include "counterpoint/llm/mock_provider.hpp"

using namespace counterpoint;
using namespace counterpoint::llm;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    dot += double(a.components[i]) * b.components[i];
    na += double(a.components[i]) * a.components[i];
    nb += double(b.components[i]) * b.components[i];
  }
  return dot / std::sqrt(na * nb);
}

// Fails the first `failures` calls with `code`, then delegates.
class FlakyProvider final : public Provider {
 public:
  FlakyProvider(int failures, ErrorCode code) : failures_(failures), code_(code) {}
  std::string id() const override { return "flaky"; }
  std::string complete(const CompletionRequest& r) override {
    ++calls;
    if (calls <= failures_) throw Error(code_, "injected");
    return inner_.complete(r);
  }
  std::vector<EmbeddingVector> embed(std::span<const std::string> t) override {
    ++calls;
    if (calls <= failures_) throw Error(code_, "injected");
    return inner_.embed(t);
  }
  std::atomic<int> calls{0};

 private:
  int failures_;
  ErrorCode code_;
  MockProvider inner_;
};

GatewayOptions no_sleep(std::vector<std::chrono::milliseconds>* sleeps = nullptr) {
  GatewayOptions o;
  o.sleep = [sleeps](std::chrono::milliseconds d) {
    if (sleeps) sleeps->push_back(d);
  };
  return o;
}

}  // namespace

TEST_CASE("selection explain prompt carries the rule text verbatim") {
  const auto catalog = TemplateCatalog::defaults();
  const auto prompt = render(catalog.get(TemplateId::SelectionExplain),
                             {{"selection", "statute of limitations"}, {"context", "..."}, {"title", "Indictment"}});
  CHECK(prompt.find("If it's one word, provide its definition. If it's more than that, use your knowledge "
                    "to give additional context on the text") != std::string::npos);
  CHECK(prompt.find("\"statute of limitations\"") != std::string::npos);
}

TEST_CASE("render fails on missing placeholder") {
  const auto catalog = TemplateCatalog::defaults();
  CHECK(code_of([&] { render(catalog.get(TemplateId::CounterGen), {}); }) == ErrorCode::MissingPlaceholder);
}

TEST_CASE("render is deterministic and prepends exemplars in order") {
  const auto catalog = TemplateCatalog::defaults();
  const Bindings b{{"title", "T"}, {"claims", "1. X"}};
  const auto first = render(catalog.get(TemplateId::CounterGen), b);
  CHECK(first == render(catalog.get(TemplateId::CounterGen), b));
  const auto ex1 = first.find("Example 1:");
  const auto ex2 = first.find("Example 2:");
  const auto body = first.find("Claims:\n1. X");
  CHECK(ex1 == 0);
  CHECK(ex1 < ex2);
  CHECK(ex2 < body);
}

TEST_CASE("render does not re-expand bound values and keeps stray braces") {
  PromptTemplate t{TemplateId::QaAnswer, "a {{x}} b {not} {{ y }} {{z}}", {}};
  CHECK(t.placeholders() == std::vector<std::string>{"x", "z"});
  CHECK(render(t, {{"x", "{{z}}"}, {"z", "Z"}}) == "a {{z}} b {not} {{ y }} Z");
}

TEST_CASE("every default template renders with its own placeholder set") {
  const auto catalog = TemplateCatalog::defaults();
  for (TemplateId id : kAllTemplates) {
    Bindings b;
    for (const auto& name : catalog.get(id).placeholders()) b[name] = "value";
    CHECK_FALSE(render(catalog.get(id), b).empty());
  }
}

TEST_CASE("mock completion uses fixtures first") {
  FixtureSet fixtures;
  fixtures.add_completion(TemplateId::ClaimExtract, "abc", {"Claim one.\nClaim two.", std::nullopt});
  auto provider = std::make_shared<MockProvider>(fixtures);
  Gateway gw(provider, no_sleep());
  const auto r = gw.complete(TemplateId::ClaimExtract, {{"article", "whatever"}}, "abc");
  CHECK(r.text == "Claim one.\nClaim two.");
  CHECK(r.provider_id == "mock");
}

TEST_CASE("mock completion falls back to the prompt digest, then synthetic text") {
  const auto catalog = TemplateCatalog::defaults();
  const std::string prompt = render(catalog.get(TemplateId::QaAnswer),
                                    {{"passages", "p"}, {"history", ""}, {"question", "q"}});
  FixtureSet fixtures;
  fixtures.add_completion(TemplateId::QaAnswer, short_digest(prompt), {"pinned", std::nullopt});
  MockProvider provider(fixtures);
  CHECK(provider.complete({TemplateId::QaAnswer, prompt, {}, "unknown"}) == "pinned");

  MockProvider bare;
  const auto a = bare.complete({TemplateId::QaAnswer, prompt, {}, ""});
  const auto b = MockProvider{}.complete({TemplateId::QaAnswer, prompt, {}, ""});
  CHECK(a == b);
  CHECK(a.rfind("Mock response ", 0) == 0);
  CHECK(a != bare.complete({TemplateId::QaAnswer, prompt + "x", {}, ""}));
  MockProvider other_seed({}, MockOptions{7, 256});
  CHECK(a != other_seed.complete({TemplateId::QaAnswer, prompt, {}, ""}));
}

TEST_CASE("retry recovers from transient failures with exponential backoff") {
  std::vector<std::chrono::milliseconds> sleeps;
  auto flaky = std::make_shared<FlakyProvider>(2, ErrorCode::ProviderUnavailable);
  Gateway gw(flaky, no_sleep(&sleeps));
  CHECK_FALSE(gw.complete(TemplateId::QaAnswer, {{"passages", "p"}, {"history", ""}, {"question", "q"}}).text.empty());
  CHECK(flaky->calls == 3);
  REQUIRE(sleeps.size() == 2);
  CHECK(sleeps[0] == std::chrono::milliseconds(250));
  CHECK(sleeps[1] == std::chrono::milliseconds(500));
}

TEST_CASE("provider down after max retries surfaces ProviderUnavailable") {
  auto flaky = std::make_shared<FlakyProvider>(100, ErrorCode::ProviderUnavailable);
  Gateway gw(flaky, no_sleep());
  CHECK(code_of([&] { gw.complete({TemplateId::QaAnswer, "p", {}, ""}); }) == ErrorCode::ProviderUnavailable);
  CHECK(flaky->calls == 3);
}

TEST_CASE("content refusal is not retried") {
  auto flaky = std::make_shared<FlakyProvider>(100, ErrorCode::ContentRefused);
  Gateway gw(flaky, no_sleep());
  CHECK(code_of([&] { gw.complete({TemplateId::QaAnswer, "p", {}, ""}); }) == ErrorCode::ContentRefused);
  CHECK(flaky->calls == 1);
}

TEST_CASE("empty provider output is an error") {
  FixtureSet fixtures;
  fixtures.add_completion(TemplateId::ClaimExtract, "k", {"  \n", std::nullopt});
  Gateway gw(std::make_shared<MockProvider>(fixtures), no_sleep());
  CHECK(code_of([&] { gw.complete({TemplateId::ClaimExtract, "p", {}, "k"}); }) == ErrorCode::EmptyCompletion);
}

TEST_CASE("fixture errors are raised and retried like real failures") {
  FixtureSet fixtures;
  fixtures.add_completion(TemplateId::CounterGen, "k", {"", ErrorCode::Timeout});
  Gateway gw(std::make_shared<MockProvider>(fixtures), no_sleep());
  CHECK(code_of([&] { gw.complete({TemplateId::CounterGen, "p", {}, "k"}); }) == ErrorCode::Timeout);
}

TEST_CASE("embeddings: order, determinism and self-similarity") {
  Gateway gw(std::make_shared<MockProvider>(), no_sleep());
  CHECK(gw.embed({}).empty());
  const auto v = gw.embed({"abc", "abc", "Something else entirely"});
  REQUIRE(v.size() == 3);
  CHECK(v[0] == v[1]);
  CHECK(v[0] != v[2]);
  const std::vector<std::string> samples = {"a", "Taxes are too high.", "!!!", "\xC3\x89t\xC3\xA9 en France",
                                            "the the the the", "word " + std::string(500, 'x')};
  for (const auto& s : samples) {
    const auto e = gw.embed({s});
    CHECK(std::abs(cosine(e[0], e[0]) - 1.0) <= 1e-9);
  }
  CHECK(code_of([&] { gw.embed({"ok", "   "}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("mock embedding depends on the token multiset only") {
  MockProvider p;
  CHECK(p.hash_embedding("Growth suffers, taxes rise.") == p.hash_embedding("taxes RISE growth suffers"));
  const double near = cosine(p.hash_embedding("The minimum wage helps workers and families."),
                             p.hash_embedding("The minimum wage helps workers and their families."));
  const double far = cosine(p.hash_embedding("The minimum wage helps workers and families."),
                            p.hash_embedding("Quantum computers factor integers quickly."));
  CHECK(near > 0.9);
  CHECK(far < near);
}

TEST_CASE("default generation parameters") {
  Gateway gw(std::make_shared<MockProvider>(), no_sleep());
  CHECK(gw.default_params(TemplateId::ClaimExtract).temperature == 0.0);
  CHECK(gw.default_params(TemplateId::DebateRegenerate).temperature > 0.0);
}

TEST_CASE("base url parsing") {
  const auto ep = parse_base_url("https://api.example.com:8443/v1/");
  CHECK(ep.origin == "https://api.example.com:8443");
  CHECK(ep.path_prefix == "/v1");
  CHECK(parse_base_url("http://localhost:9000").path_prefix.empty());
  CHECK(code_of([] { parse_base_url("localhost:9000"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_base_url("ftp://x"); }) == ErrorCode::InvalidArgument);
}

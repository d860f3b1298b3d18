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

#pragma once

#include <doctest.h>

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "counterpoint/error.hpp"
#include "counterpoint/llm/gateway.hpp"
#include "counterpoint/llm/mock_provider.hpp"

namespace testing {

template <typename Fn>
counterpoint::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const counterpoint::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return counterpoint::ErrorCode::IoError;
}

// Mock wrapper that records every request and can inject failures.
class RecordingProvider final : public counterpoint::llm::Provider {
 public:
  explicit RecordingProvider(counterpoint::llm::FixtureSet fixtures = {},
                             counterpoint::llm::MockOptions options = {})
      : inner_(std::move(fixtures), options) {}

  std::string id() const override { return "mock"; }

  std::string complete(const counterpoint::llm::CompletionRequest& r) override {
    {
      std::lock_guard lock(mutex_);
      requests_.push_back(r);
    }
    if (fail_completions) throw counterpoint::Error(counterpoint::ErrorCode::ProviderUnavailable, "injected");
    if (override_completion) {
      if (auto text = override_completion(r)) return *text;
    }
    return inner_.complete(r);
  }

  std::vector<counterpoint::llm::EmbeddingVector> embed(std::span<const std::string> texts) override {
    const int call = ++embed_calls;
    if (fail_embed_on_call > 0 && call >= fail_embed_on_call) {
      throw counterpoint::Error(counterpoint::ErrorCode::ProviderUnavailable, "injected embed failure");
    }
    return inner_.embed(texts);
  }

  std::vector<counterpoint::llm::CompletionRequest> requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
  }
  std::size_t count(counterpoint::llm::TemplateId id) const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (const auto& r : requests_) n += r.template_id == id ? 1 : 0;
    return n;
  }

  std::atomic<bool> fail_completions{false};
  std::atomic<int> fail_embed_on_call{0};
  std::atomic<int> embed_calls{0};
  std::function<std::optional<std::string>(const counterpoint::llm::CompletionRequest&)> override_completion;

 private:
  counterpoint::llm::MockProvider inner_;
  mutable std::mutex mutex_;
  std::vector<counterpoint::llm::CompletionRequest> requests_;
};

inline counterpoint::llm::GatewayOptions fast_options() {
  counterpoint::llm::GatewayOptions o;
  o.sleep = [](std::chrono::milliseconds) {};
  return o;
}

inline counterpoint::llm::Gateway make_gateway(std::shared_ptr<counterpoint::llm::Provider> provider) {
  return counterpoint::llm::Gateway(std::move(provider), fast_options());
}

}  // namespace testing

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

#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "counterpoint/llm/provider.hpp"

namespace counterpoint {

struct HttpEndpoint {
  std::string origin;       // scheme://host[:port]
  std::string path_prefix;  // "" or "/v1"
};

// Splits "https://host:8443/v1/" into origin and prefix. Throws InvalidArgument.
HttpEndpoint parse_base_url(std::string_view url);

// Enforces a minimum spacing between outbound requests.
class RateLimiter {
 public:
  explicit RateLimiter(std::chrono::milliseconds min_interval) : min_interval_(min_interval) {}
  void acquire();

 private:
  std::mutex mutex_;
  std::chrono::milliseconds min_interval_;
  std::chrono::steady_clock::time_point next_{};
};

}  // namespace counterpoint

namespace counterpoint::llm {

struct HttpProviderOptions {
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  std::string model = "gpt-3.5-turbo";
  std::string embedding_model = "text-embedding-3-small";
  std::chrono::seconds timeout{60};
  std::chrono::milliseconds min_interval{0};
};

// Chat-completions and embeddings over the OpenAI-compatible HTTP API.
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(HttpProviderOptions options);

  std::string id() const override { return "http:" + options_.model; }
  std::string complete(const CompletionRequest& request) override;
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

 private:
  std::string post_json(const std::string& path, const std::string& body);

  HttpProviderOptions options_;
  HttpEndpoint endpoint_;
  RateLimiter limiter_;
};

}  // namespace counterpoint::llm

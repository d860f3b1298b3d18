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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "counterpoint/llm/prompt.hpp"
#include "counterpoint/llm/provider.hpp"

namespace counterpoint::llm {

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
};

struct GatewayOptions {
  RetryPolicy retry;
  // Temperature used for DebateRegenerate; every other template runs at 0.
  double regenerate_temperature = 0.9;
  // Replaced in tests to avoid real sleeps.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Retrying front end over a Provider plus the prompt catalog. Stateless after
// construction; safe to share across threads.
class Gateway {
 public:
  explicit Gateway(std::shared_ptr<Provider> provider, GatewayOptions options = {},
                   TemplateCatalog catalog = TemplateCatalog::defaults());

  // Retries ProviderUnavailable and Timeout with exponential backoff; other
  // errors surface immediately. Empty output raises EmptyCompletion.
  CompletionResult complete(const CompletionRequest& request) const;

  // Renders `id` with `bindings` and completes it with the template's
  // default parameters.
  CompletionResult complete(TemplateId id, const Bindings& bindings, std::string input_digest = {},
                            std::optional<GenerationParams> params = std::nullopt) const;

  // One vector per text, same order. Throws InvalidArgument on blank input
  // and ProviderUnavailable on a malformed provider reply.
  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) const;

  GenerationParams default_params(TemplateId id) const;
  const TemplateCatalog& templates() const { return catalog_; }
  const std::string& provider_id() const { return provider_id_; }

 private:
  template <typename Fn>
  auto with_retry(Fn&& fn) const -> decltype(fn());

  std::shared_ptr<Provider> provider_;
  std::string provider_id_;
  GatewayOptions options_;
  TemplateCatalog catalog_;
};

}  // namespace counterpoint::llm

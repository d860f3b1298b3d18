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
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "counterpoint/llm/prompt.hpp"

namespace counterpoint::llm {

struct GenerationParams {
  int max_tokens = 512;
  double temperature = 0.0;
};

struct CompletionRequest {
  TemplateId template_id = TemplateId::ClaimExtract;
  std::string prompt;
  GenerationParams params;
  // Key the mock provider uses to look up fixtures. Empty means "digest of
  // the prompt".
  std::string input_digest;
};

struct CompletionResult {
  std::string text;
  std::string provider_id;
  std::chrono::milliseconds latency{0};
};

struct EmbeddingVector {
  std::vector<float> components;

  std::size_t dimension() const { return components.size(); }
  bool operator==(const EmbeddingVector&) const = default;
};

// Backend for completion and embedding. Implementations report failures by
// throwing counterpoint::Error with ProviderUnavailable, Timeout or
// ContentRefused, and must be safe to call from several threads.
class Provider {
 public:
  virtual ~Provider() = default;

  virtual std::string id() const = 0;
  virtual std::string complete(const CompletionRequest& request) = 0;
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;
};

}  // namespace counterpoint::llm

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

#include <cstdint>
#include <memory>
#include <string>

#include "counterpoint/llm/provider.hpp"

namespace counterpoint::llm {

struct ProviderConfig {
  std::string kind = "mock";  // "mock" or "openai"
  std::string fixtures_dir;
  std::uint64_t seed = 42;
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  std::string model = "gpt-3.5-turbo";
  std::string embedding_model = "text-embedding-3-small";

  // GATEWAY_PROVIDER, GATEWAY_FIXTURES, GATEWAY_SEED, GATEWAY_BASE_URL,
  // GATEWAY_API_KEY, GATEWAY_MODEL, GATEWAY_EMBED_MODEL.
  void apply_env();
};

std::shared_ptr<Provider> make_provider(const ProviderConfig& config);

}  // namespace counterpoint::llm

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

#include "counterpoint/llm/factory.hpp"

#include <cstdlib>

#include "counterpoint/error.hpp"
#include "counterpoint/llm/http_provider.hpp"
#include "counterpoint/llm/mock_provider.hpp"

namespace counterpoint::llm {

namespace {

void read_env(const char* name, std::string& target) {
  if (const char* value = std::getenv(name); value != nullptr && *value != '\0') target = value;
}

}  // namespace

void ProviderConfig::apply_env() {
  read_env("GATEWAY_PROVIDER", kind);
  read_env("GATEWAY_FIXTURES", fixtures_dir);
  read_env("GATEWAY_BASE_URL", base_url);
  read_env("GATEWAY_API_KEY", api_key);
  read_env("GATEWAY_MODEL", model);
  read_env("GATEWAY_EMBED_MODEL", embedding_model);
  std::string seed_text;
  read_env("GATEWAY_SEED", seed_text);
  if (!seed_text.empty()) {
    try {
      seed = std::stoull(seed_text);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "GATEWAY_SEED is not an integer: " + seed_text);
    }
  }
}

std::shared_ptr<Provider> make_provider(const ProviderConfig& config) {
  if (config.kind == "mock") {
    FixtureSet fixtures;
    if (!config.fixtures_dir.empty()) fixtures = FixtureSet::load_directory(config.fixtures_dir);
    return std::make_shared<MockProvider>(std::move(fixtures), MockOptions{config.seed, 256});
  }
  if (config.kind == "openai") {
    HttpProviderOptions options;
    options.base_url = config.base_url;
    options.api_key = config.api_key;
    options.model = config.model;
    options.embedding_model = config.embedding_model;
    return std::make_shared<HttpProvider>(std::move(options));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown provider kind: " + config.kind);
}

}  // namespace counterpoint::llm

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

#include "counterpoint/service/config.hpp"

#include <cstdlib>

#include "counterpoint/core/files.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::service {

namespace {

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

template <typename T>
T env_number(const char* name, T fallback) {
  const char* v = env(name);
  if (!v) return fallback;
  try {
    if constexpr (std::is_floating_point_v<T>) {
      return static_cast<T>(std::stod(v));
    } else {
      const long long parsed = std::stoll(v);
      if (parsed < 0) throw std::out_of_range("negative");
      return static_cast<T>(parsed);
    }
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " is not a valid number: " + v);
  }
}

template <typename T>
void take(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

void ServiceConfig::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  take(j, "host", host);
  take(j, "port", port);
  if (j.contains("data_dir")) data_dir = j.at("data_dir").get<std::string>();
  take(j, "workers", workers);
  take(j, "k", qa.k);
  take(j, "chunk_size", chunk.size);
  take(j, "chunk_overlap", chunk.overlap);
  take(j, "fuzzy_threshold", annotate.match.fuzzy_threshold);
  take(j, "max_regens", debate.max_regens);
  take(j, "qa_history", qa.history_turns);
  take(j, "debate_history", debate.history_turns);
  if (j.contains("provider")) {
    const auto& p = j.at("provider");
    take(p, "kind", provider.kind);
    take(p, "fixtures_dir", provider.fixtures_dir);
    take(p, "seed", provider.seed);
    take(p, "base_url", provider.base_url);
    take(p, "api_key", provider.api_key);
    take(p, "model", provider.model);
    take(p, "embedding_model", provider.embedding_model);
  }
  if (j.contains("search")) {
    const auto& s = j.at("search");
    take(s, "kind", search.kind);
    take(s, "fixtures_dir", search.fixtures_dir);
    take(s, "base_url", search.base_url);
    take(s, "api_key", search.api_key);
  }
}

void ServiceConfig::apply_file(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "config file " + path.string() + ": " + e.what());
  }
  apply_json(j);
}

void ServiceConfig::apply_env() {
  if (const char* v = env("COUNTERPOINT_HOST")) host = v;
  port = env_number("COUNTERPOINT_PORT", port);
  if (const char* v = env("COUNTERPOINT_DATA_DIR")) data_dir = v;
  workers = env_number("COUNTERPOINT_WORKERS", workers);
  qa.k = env_number("COUNTERPOINT_K", qa.k);
  chunk.size = env_number("COUNTERPOINT_CHUNK_SIZE", chunk.size);
  chunk.overlap = env_number("COUNTERPOINT_CHUNK_OVERLAP", chunk.overlap);
  annotate.match.fuzzy_threshold = env_number("COUNTERPOINT_FUZZY_THRESHOLD", annotate.match.fuzzy_threshold);
  debate.max_regens = env_number("COUNTERPOINT_MAX_REGENS", debate.max_regens);
  provider.apply_env();
  search.apply_env();
}

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) throw Error(ErrorCode::InvalidArgument, "port out of range");
  if (workers == 0) throw Error(ErrorCode::InvalidArgument, "workers must be positive");
  if (qa.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (!(annotate.match.fuzzy_threshold > 0.0 && annotate.match.fuzzy_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fuzzy_threshold must be in (0, 1]");
  }
  if (debate.max_regens < 0) throw Error(ErrorCode::InvalidArgument, "max_regens must be non-negative");
  rag::validate(chunk);
}

ServiceConfig ServiceConfig::load(const std::optional<std::filesystem::path>& file) {
  ServiceConfig config;
  if (file) {
    config.apply_file(*file);
  } else if (const char* path = env("COUNTERPOINT_CONFIG")) {
    config.apply_file(path);
  }
  config.apply_env();
  config.validate();
  return config;
}

}  // namespace counterpoint::service

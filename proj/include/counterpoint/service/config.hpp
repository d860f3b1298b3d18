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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "counterpoint/annotate/annotator.hpp"
#include "counterpoint/context/context.hpp"
#include "counterpoint/context/search.hpp"
#include "counterpoint/debate/debate.hpp"
#include "counterpoint/llm/factory.hpp"
#include "counterpoint/llm/gateway.hpp"
#include "counterpoint/rag/chunker.hpp"
#include "counterpoint/rag/qa.hpp"

namespace counterpoint::service {

// Settings come from defaults, then the optional JSON config file, then the
// environment; later sources win.
//
// Config file keys (all optional):
//   host, port, data_dir, workers, k, chunk_size, chunk_overlap,
//   fuzzy_threshold, max_regens, qa_history, debate_history,
//   provider {kind, fixtures_dir, seed, base_url, api_key, model, embedding_model},
//   search {kind, fixtures_dir, base_url, api_key}
//
// Environment: COUNTERPOINT_CONFIG (file path), COUNTERPOINT_HOST,
// COUNTERPOINT_PORT, COUNTERPOINT_DATA_DIR, COUNTERPOINT_WORKERS,
// COUNTERPOINT_K, COUNTERPOINT_CHUNK_SIZE, COUNTERPOINT_CHUNK_OVERLAP,
// COUNTERPOINT_FUZZY_THRESHOLD, COUNTERPOINT_MAX_REGENS, plus the GATEWAY_*
// and SEARCH_* variables read by the provider factories.
struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir = "counterpoint-data";
  std::size_t workers = 2;

  llm::ProviderConfig provider;
  llm::GatewayOptions gateway;
  context::SearchConfig search;
  annotate::AnnotateOptions annotate;
  context::ContextOptions context;
  rag::ChunkParams chunk;
  rag::QaOptions qa;
  debate::DebateOptions debate;

  void apply_json(const nlohmann::json& j);
  void apply_file(const std::filesystem::path& path);
  void apply_env();

  // Throws InvalidArgument for out-of-range values.
  void validate() const;

  // Defaults, then `file` (or COUNTERPOINT_CONFIG when `file` is empty), then
  // the environment.
  static ServiceConfig load(const std::optional<std::filesystem::path>& file = std::nullopt);
};

}  // namespace counterpoint::service

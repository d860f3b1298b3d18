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

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "counterpoint/error.hpp"
#include "counterpoint/llm/http_provider.hpp"

namespace counterpoint::context {

struct SearchSnippet {
  std::string title;
  std::string url;
  std::string snippet;
  int rank = 0;

  bool operator==(const SearchSnippet&) const = default;
};

// Web search backend. Results come back best first; failures are thrown as
// Error (any code).
class SearchProvider {
 public:
  virtual ~SearchProvider() = default;
  virtual std::vector<SearchSnippet> search(const std::string& query, std::size_t limit) = 0;
};

// Serves results from JSON fixture files keyed by short_digest(query):
//
//   {"query": "Title text", "results": [{"title": "...", "url": "...", "snippet": "..."}]}
//   {"key": "<16 hex>", "error": "Timeout"}
//
// Unknown queries return no results.
class MockSearchProvider final : public SearchProvider {
 public:
  MockSearchProvider() = default;
  static MockSearchProvider load_directory(const std::filesystem::path& dir);

  void add(const std::string& query, std::vector<SearchSnippet> results);
  void add_failure(const std::string& query, ErrorCode code);

  std::vector<SearchSnippet> search(const std::string& query, std::size_t limit) override;

 private:
  std::map<std::string, std::vector<SearchSnippet>> results_;
  std::map<std::string, ErrorCode> failures_;
};

struct HttpSearchOptions {
  std::string base_url;
  std::string api_key;
  std::chrono::seconds timeout{20};
};

// GET {base}/search?q=...&num=N&api_key=KEY. Accepts either
// {"organic_results": [{"title", "link", "snippet"}]} or
// {"results": [{"title", "url", "snippet"}]}.
class HttpSearchProvider final : public SearchProvider {
 public:
  explicit HttpSearchProvider(HttpSearchOptions options);
  std::vector<SearchSnippet> search(const std::string& query, std::size_t limit) override;

 private:
  HttpSearchOptions options_;
  HttpEndpoint endpoint_;
};

struct SearchConfig {
  std::string kind = "mock";  // "mock" or "http"
  std::string fixtures_dir;
  std::string base_url;
  std::string api_key;

  // SEARCH_PROVIDER, SEARCH_FIXTURES, SEARCH_BASE_URL, SEARCH_API_KEY.
  void apply_env();
};

std::shared_ptr<SearchProvider> make_search_provider(const SearchConfig& config);

}  // namespace counterpoint::context

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

#include "counterpoint/context/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "counterpoint/core/digest.hpp"

namespace counterpoint::context {

namespace {

using nlohmann::json;

ErrorCode failure_from_string(const std::string& name) {
  if (name == "Timeout") return ErrorCode::Timeout;
  if (name == "ProviderUnavailable" || name == "SearchUnavailable") return ErrorCode::SearchUnavailable;
  throw Error(ErrorCode::ParseError, "unsupported search fixture error: " + name);
}

std::vector<SearchSnippet> parse_results(const json& items, const char* url_field) {
  std::vector<SearchSnippet> out;
  for (const auto& item : items) {
    SearchSnippet s;
    s.title = item.value("title", std::string{});
    s.url = item.value(url_field, std::string{});
    s.snippet = item.value("snippet", std::string{});
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

void MockSearchProvider::add(const std::string& query, std::vector<SearchSnippet> results) {
  results_.insert_or_assign(short_digest(query), std::move(results));
}

void MockSearchProvider::add_failure(const std::string& query, ErrorCode code) {
  failures_.insert_or_assign(short_digest(query), code);
}

MockSearchProvider MockSearchProvider::load_directory(const std::filesystem::path& dir) {
  MockSearchProvider provider;
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::IoError, "search fixture directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    std::ifstream in(file);
    try {
      const json doc = json::parse(in);
      const std::string key =
          doc.contains("key") ? doc.at("key").get<std::string>() : short_digest(doc.at("query").get<std::string>());
      if (doc.contains("error")) {
        provider.failures_.insert_or_assign(key, failure_from_string(doc.at("error").get<std::string>()));
      } else {
        provider.results_.insert_or_assign(key, parse_results(doc.at("results"), "url"));
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, file.string() + ": " + e.what());
    }
  }
  return provider;
}

std::vector<SearchSnippet> MockSearchProvider::search(const std::string& query, std::size_t limit) {
  const std::string key = short_digest(query);
  if (const auto f = failures_.find(key); f != failures_.end()) throw Error(f->second, "mock search failure");
  const auto it = results_.find(key);
  if (it == results_.end()) return {};
  auto out = it->second;
  if (out.size() > limit) out.resize(limit);
  return out;
}

HttpSearchProvider::HttpSearchProvider(HttpSearchOptions options)
    : options_(std::move(options)), endpoint_(parse_base_url(options_.base_url)) {}

std::vector<SearchSnippet> HttpSearchProvider::search(const std::string& query, std::size_t limit) {
  httplib::Client client(endpoint_.origin);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  httplib::Params params{{"q", query}, {"num", std::to_string(limit)}};
  if (!options_.api_key.empty()) params.emplace("api_key", options_.api_key);
  auto res = client.Get(endpoint_.path_prefix + "/search", params, httplib::Headers{});
  if (!res) {
    const auto err = res.error();
    throw Error(err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout ? ErrorCode::Timeout
                                                                                          : ErrorCode::SearchUnavailable,
                "search request failed: " + httplib::to_string(err));
  }
  if (res->status != 200) throw Error(ErrorCode::SearchUnavailable, "search returned HTTP " + std::to_string(res->status));
  try {
    const auto j = json::parse(res->body);
    if (j.contains("organic_results")) return parse_results(j.at("organic_results"), "link");
    return parse_results(j.at("results"), "url");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SearchUnavailable, std::string("malformed search reply: ") + e.what());
  }
}

void SearchConfig::apply_env() {
  const auto read = [](const char* name, std::string& target) {
    if (const char* v = std::getenv(name); v != nullptr && *v != '\0') target = v;
  };
  read("SEARCH_PROVIDER", kind);
  read("SEARCH_FIXTURES", fixtures_dir);
  read("SEARCH_BASE_URL", base_url);
  read("SEARCH_API_KEY", api_key);
  if (!base_url.empty() && std::getenv("SEARCH_PROVIDER") == nullptr) kind = "http";
}

std::shared_ptr<SearchProvider> make_search_provider(const SearchConfig& config) {
  if (config.kind == "mock") {
    if (config.fixtures_dir.empty()) return std::make_shared<MockSearchProvider>();
    return std::make_shared<MockSearchProvider>(MockSearchProvider::load_directory(config.fixtures_dir));
  }
  if (config.kind == "http") {
    return std::make_shared<HttpSearchProvider>(HttpSearchOptions{config.base_url, config.api_key});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown search provider kind: " + config.kind);
}

}  // namespace counterpoint::context

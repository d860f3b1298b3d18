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

#include "counterpoint/llm/http_provider.hpp"

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "counterpoint/error.hpp"

namespace counterpoint {

HttpEndpoint parse_base_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "base url needs a scheme: " + std::string(url));
  }
  const std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::InvalidArgument, "unsupported scheme: " + std::string(scheme));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  HttpEndpoint ep;
  ep.origin = std::string(url.substr(0, path_start));
  if (path_start != std::string_view::npos) {
    ep.path_prefix = std::string(url.substr(path_start));
    while (!ep.path_prefix.empty() && ep.path_prefix.back() == '/') ep.path_prefix.pop_back();
  }
  if (ep.origin.size() <= scheme_end + 3) throw Error(ErrorCode::InvalidArgument, "base url has no host");
  return ep;
}

void RateLimiter::acquire() {
  if (min_interval_.count() <= 0) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + min_interval_;
  }
  std::this_thread::sleep_until(slot);
}

}  // namespace counterpoint

namespace counterpoint::llm {

using nlohmann::json;

HttpProvider::HttpProvider(HttpProviderOptions options)
    : options_(std::move(options)),
      endpoint_(parse_base_url(options_.base_url)),
      limiter_(options_.min_interval) {}

std::string HttpProvider::post_json(const std::string& path, const std::string& body) {
  limiter_.acquire();
  httplib::Client client(endpoint_.origin);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_write_timeout(options_.timeout);
  httplib::Headers headers;
  if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);
  auto res = client.Post(endpoint_.path_prefix + path, headers, body, "application/json");
  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
      throw Error(ErrorCode::Timeout, "provider timed out: " + httplib::to_string(err));
    }
    throw Error(ErrorCode::ProviderUnavailable, "provider unreachable: " + httplib::to_string(err));
  }
  if (res->status >= 200 && res->status < 300) return res->body;

  std::string code;
  try {
    const auto j = json::parse(res->body);
    code = j.at("error").value("code", std::string{});
  } catch (const json::exception&) {
  }
  if (code == "content_filter" || code == "content_policy_violation") {
    throw Error(ErrorCode::ContentRefused, "provider refused the request");
  }
  throw Error(ErrorCode::ProviderUnavailable, "provider returned HTTP " + std::to_string(res->status));
}

std::string HttpProvider::complete(const CompletionRequest& request) {
  json body = {
      {"model", options_.model},
      {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.params.temperature},
      {"max_tokens", request.params.max_tokens},
  };
  const std::string raw = post_json("/chat/completions", body.dump());
  try {
    const auto j = json::parse(raw);
    const auto& choice = j.at("choices").at(0);
    if (choice.value("finish_reason", std::string{}) == "content_filter") {
      throw Error(ErrorCode::ContentRefused, "provider refused the request");
    }
    const auto& content = choice.at("message").at("content");
    return content.is_null() ? std::string{} : content.get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, std::string("malformed completion reply: ") + e.what());
  }
}

std::vector<EmbeddingVector> HttpProvider::embed(std::span<const std::string> texts) {
  json body = {{"model", options_.embedding_model}, {"input", json::array()}};
  for (const auto& t : texts) body["input"].push_back(t);
  const std::string raw = post_json("/embeddings", body.dump());
  try {
    const auto j = json::parse(raw);
    std::vector<EmbeddingVector> out(texts.size());
    std::vector<bool> seen(texts.size(), false);
    for (const auto& item : j.at("data")) {
      const auto index = item.at("index").get<std::size_t>();
      if (index >= out.size() || seen[index]) throw Error(ErrorCode::ProviderUnavailable, "bad embedding index");
      out[index].components = item.at("embedding").get<std::vector<float>>();
      seen[index] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorCode::ProviderUnavailable, "missing embeddings in reply");
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, std::string("malformed embedding reply: ") + e.what());
  }
}

}  // namespace counterpoint::llm

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

#include "counterpoint/llm/gateway.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::llm {

namespace {

bool is_transient(ErrorCode code) {
  return code == ErrorCode::ProviderUnavailable || code == ErrorCode::Timeout;
}

bool is_blank(const std::string& text) {
  const auto cps = utf8::decode(text);
  return std::all_of(cps.begin(), cps.end(), utf8::is_whitespace);
}

}  // namespace

Gateway::Gateway(std::shared_ptr<Provider> provider, GatewayOptions options, TemplateCatalog catalog)
    : provider_(std::move(provider)), options_(std::move(options)), catalog_(std::move(catalog)) {
  if (!provider_) throw Error(ErrorCode::ProviderUnavailable, "no provider configured");
  provider_id_ = provider_->id();
  if (options_.retry.attempts < 1) options_.retry.attempts = 1;
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

template <typename Fn>
auto Gateway::with_retry(Fn&& fn) const -> decltype(fn()) {
  auto backoff = options_.retry.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const Error& e) {
      if (!is_transient(e.code()) || attempt >= options_.retry.attempts) throw;
    }
    options_.sleep(backoff);
    backoff *= 2;
  }
}

CompletionResult Gateway::complete(const CompletionRequest& request) const {
  const auto started = std::chrono::steady_clock::now();
  std::string text = with_retry([&] { return provider_->complete(request); });
  if (is_blank(text)) {
    throw Error(ErrorCode::EmptyCompletion,
                std::string(to_string(request.template_id)) + ": provider returned empty output");
  }
  const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  return CompletionResult{std::move(text), provider_id_, latency};
}

CompletionResult Gateway::complete(TemplateId id, const Bindings& bindings, std::string input_digest,
                                   std::optional<GenerationParams> params) const {
  CompletionRequest request;
  request.template_id = id;
  request.prompt = render(catalog_.get(id), bindings);
  request.params = params.value_or(default_params(id));
  request.input_digest = std::move(input_digest);
  return complete(request);
}

std::vector<EmbeddingVector> Gateway::embed(const std::vector<std::string>& texts) const {
  if (texts.empty()) return {};
  for (const auto& t : texts) {
    if (is_blank(t)) throw Error(ErrorCode::InvalidArgument, "cannot embed blank text");
  }
  auto vectors = with_retry([&] { return provider_->embed(texts); });
  if (vectors.size() != texts.size()) {
    throw Error(ErrorCode::ProviderUnavailable, "provider returned " + std::to_string(vectors.size()) +
                                                    " embeddings for " + std::to_string(texts.size()) +
                                                    " inputs");
  }
  const std::size_t dim = vectors.front().dimension();
  for (const auto& v : vectors) {
    if (v.dimension() == 0 || v.dimension() != dim) {
      throw Error(ErrorCode::ProviderUnavailable, "provider returned inconsistent embedding dimensions");
    }
    if (!std::all_of(v.components.begin(), v.components.end(), [](float x) { return std::isfinite(x); })) {
      throw Error(ErrorCode::ProviderUnavailable, "provider returned non-finite embedding");
    }
  }
  return vectors;
}

GenerationParams Gateway::default_params(TemplateId id) const {
  switch (id) {
    case TemplateId::ClaimExtract: return {1024, 0.0};
    case TemplateId::CounterGen: return {2048, 0.0};
    case TemplateId::DebateRegenerate: return {400, options_.regenerate_temperature};
    case TemplateId::DebateRebut: return {400, 0.0};
    default: return {512, 0.0};
  }
}

}  // namespace counterpoint::llm

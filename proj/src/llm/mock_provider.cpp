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

#include "counterpoint/llm/mock_provider.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "counterpoint/core/digest.hpp"
#include "counterpoint/core/utf8.hpp"

namespace counterpoint::llm {

namespace {

using nlohmann::json;

ErrorCode error_from_string(const std::string& name) {
  if (name == "ProviderUnavailable") return ErrorCode::ProviderUnavailable;
  if (name == "Timeout") return ErrorCode::Timeout;
  if (name == "ContentRefused") return ErrorCode::ContentRefused;
  throw Error(ErrorCode::ParseError, "unsupported fixture error: " + name);
}

std::uint64_t fnv1a(std::uint64_t seed, std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL ^ (seed * 0x9E3779B97F4A7C15ULL);
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  // Final avalanche so the low bits used for bucketing depend on every byte.
  h ^= h >> 33;
  h *= 0xFF51AFD7ED558CCDULL;
  h ^= h >> 33;
  return h;
}

bool is_token_punct(char32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  return (cp >= 0x2010 && cp <= 0x205E) || cp == 0xAB || cp == 0xBB || cp == 0xBF || cp == 0xA1;
}

// Lowercased whitespace tokens with edge punctuation removed. A token made
// only of punctuation is kept as-is so every non-blank text has a token.
std::vector<std::string> hash_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::u32string current;
  const auto flush = [&] {
    if (current.empty()) return;
    std::size_t b = 0;
    std::size_t e = current.size();
    while (b < e && is_token_punct(current[b])) ++b;
    while (e > b && is_token_punct(current[e - 1])) --e;
    tokens.push_back(b < e ? utf8::encode(current.substr(b, e - b)) : utf8::encode(current));
    current.clear();
  };
  for (char32_t cp : utf8::decode(text)) {
    if (utf8::is_whitespace(cp)) {
      flush();
    } else {
      current.push_back(utf8::to_lower(cp));
    }
  }
  flush();
  return tokens;
}

constexpr std::array<std::string_view, 32> kVocabulary = {
    "policy",   "evidence", "voters",    "economy",  "argue",   "costs",   "families", "reform",
    "data",     "history",  "critics",   "support",  "growth",  "schools", "courts",   "budget",
    "research", "markets",  "community", "risk",     "public",  "trade",   "health",   "workers",
    "future",   "federal",  "local",     "analysis", "results", "claims",  "debate",   "context",
};

}  // namespace

void FixtureSet::add_completion(TemplateId id, std::string key, CompletionFixture fixture) {
  completions_.insert_or_assign({id, std::move(key)}, std::move(fixture));
}

void FixtureSet::add_embedding(const std::string& text, EmbeddingVector vector) {
  embeddings_.insert_or_assign(text, std::move(vector));
}

const CompletionFixture* FixtureSet::find_completion(TemplateId id, const std::string& key) const {
  const auto it = completions_.find({id, key});
  return it == completions_.end() ? nullptr : &it->second;
}

const EmbeddingVector* FixtureSet::find_embedding(const std::string& text) const {
  const auto it = embeddings_.find(text);
  return it == embeddings_.end() ? nullptr : &it->second;
}

void FixtureSet::load_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::IoError, "cannot read fixture " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, file.string() + ": " + e.what());
  }
  const auto add_entry = [&](const json& entry) {
    if (entry.contains("embedding")) {
      EmbeddingVector v;
      v.components = entry.at("embedding").get<std::vector<float>>();
      add_embedding(entry.at("embedding_text").get<std::string>(), std::move(v));
      return;
    }
    const TemplateId id = template_from_string(entry.at("template").get<std::string>());
    std::string key = entry.contains("key") ? entry.at("key").get<std::string>()
                                            : short_digest(entry.at("key_text").get<std::string>());
    CompletionFixture fixture;
    if (entry.contains("error")) {
      fixture.error = error_from_string(entry.at("error").get<std::string>());
    } else {
      fixture.output = entry.at("output").get<std::string>();
    }
    add_completion(id, std::move(key), std::move(fixture));
  };
  try {
    if (doc.is_array()) {
      for (const auto& entry : doc) add_entry(entry);
    } else {
      add_entry(doc);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, file.string() + ": " + e.what());
  }
}

FixtureSet FixtureSet::load_directory(const std::filesystem::path& dir) {
  FixtureSet set;
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::IoError, "fixture directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  // Later files override earlier ones; sort so the outcome does not depend on
  // directory iteration order.
  std::sort(files.begin(), files.end());
  for (const auto& f : files) set.load_file(f);
  return set;
}

MockProvider::MockProvider(FixtureSet fixtures, MockOptions options)
    : fixtures_(std::move(fixtures)), options_(options) {}

std::string MockProvider::complete(const CompletionRequest& request) {
  const std::string prompt_key = short_digest(request.prompt);
  const CompletionFixture* fixture = nullptr;
  if (!request.input_digest.empty()) fixture = fixtures_.find_completion(request.template_id, request.input_digest);
  if (fixture == nullptr) fixture = fixtures_.find_completion(request.template_id, prompt_key);
  if (fixture != nullptr) {
    if (fixture->error) throw Error(*fixture->error, "mock fixture failure");
    return fixture->output;
  }
  return synthetic_text(request.prompt);
}

std::string MockProvider::synthetic_text(const std::string& prompt) const {
  const std::string digest = sha256_hex(std::to_string(options_.seed) + '\n' + prompt);
  std::mt19937_64 rng(std::stoull(digest.substr(0, 16), nullptr, 16));
  std::string out = "Mock response " + digest.substr(0, 8) + ":";
  const int sentences = 2 + static_cast<int>(rng() % 2);
  for (int s = 0; s < sentences; ++s) {
    const int words = 6 + static_cast<int>(rng() % 6);
    for (int w = 0; w < words; ++w) {
      out += ' ';
      out += kVocabulary[rng() % kVocabulary.size()];
    }
    out += '.';
  }
  return out;
}

EmbeddingVector MockProvider::hash_embedding(const std::string& text) const {
  EmbeddingVector v;
  v.components.assign(options_.dimension, 0.0f);
  for (const auto& token : hash_tokens(text)) {
    const std::uint64_t h = fnv1a(options_.seed, token);
    v.components[h % options_.dimension] += 1.0f;
  }
  return v;
}

std::vector<EmbeddingVector> MockProvider::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    if (const auto* pinned = fixtures_.find_embedding(text)) {
      out.push_back(*pinned);
    } else {
      out.push_back(hash_embedding(text));
    }
  }
  return out;
}

}  // namespace counterpoint::llm

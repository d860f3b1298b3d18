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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "counterpoint/error.hpp"
#include "counterpoint/llm/provider.hpp"

namespace counterpoint::llm {

struct CompletionFixture {
  std::string output;
  // Set to make the fixture fail instead of answering.
  std::optional<ErrorCode> error;
};

// Fixture files are JSON: a single entry or an array of entries.
//
//   {"template": "ClaimExtract", "key": "<16 hex>", "output": "..."}
//   {"template": "QaAnswer", "key_text": "question text", "output": "..."}
//   {"template": "CounterGen", "key": "...", "error": "ProviderUnavailable"}
//   {"embedding_text": "chunk text", "embedding": [0.1, 0.2, ...]}
//
// "key_text" is hashed with short_digest() at load time.
class FixtureSet {
 public:
  static FixtureSet load_directory(const std::filesystem::path& dir);
  void load_file(const std::filesystem::path& file);

  void add_completion(TemplateId id, std::string key, CompletionFixture fixture);
  void add_embedding(const std::string& text, EmbeddingVector vector);

  const CompletionFixture* find_completion(TemplateId id, const std::string& key) const;
  const EmbeddingVector* find_embedding(const std::string& text) const;

  std::size_t size() const { return completions_.size() + embeddings_.size(); }

 private:
  std::map<std::pair<TemplateId, std::string>, CompletionFixture> completions_;
  std::map<std::string, EmbeddingVector> embeddings_;
};

struct MockOptions {
  std::uint64_t seed = 42;
  std::size_t dimension = 256;
};

// Offline provider. Completions resolve as: fixture keyed by the request's
// input digest, then fixture keyed by the prompt digest, then synthetic text
// derived from (seed, prompt). Embeddings are feature-hashed counts of the
// lowercased token multiset unless a fixture pins the vector.
class MockProvider final : public Provider {
 public:
  explicit MockProvider(FixtureSet fixtures = {}, MockOptions options = {});

  std::string id() const override { return "mock"; }
  std::string complete(const CompletionRequest& request) override;
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

  EmbeddingVector hash_embedding(const std::string& text) const;
  std::string synthetic_text(const std::string& prompt) const;

 private:
  FixtureSet fixtures_;
  MockOptions options_;
};

}  // namespace counterpoint::llm

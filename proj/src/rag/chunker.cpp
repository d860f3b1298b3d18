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

#include "counterpoint/rag/chunker.hpp"

#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::rag {

std::vector<Span> whitespace_tokens(const Document& doc) {
  const std::u32string cps = utf8::decode(doc.body());
  std::vector<Span> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && utf8::is_whitespace(cps[i])) ++i;
    if (i == cps.size()) break;
    const std::size_t start = i;
    while (i < cps.size() && !utf8::is_whitespace(cps[i])) ++i;
    tokens.push_back({start, i});
  }
  return tokens;
}

void validate(const ChunkParams& params) {
  if (params.size == 0 || params.overlap >= params.size) {
    throw Error(ErrorCode::InvalidChunkParams, "chunk overlap " + std::to_string(params.overlap) +
                                                   " must be smaller than chunk size " +
                                                   std::to_string(params.size));
  }
}

std::size_t chunk_count(std::size_t total_tokens, const ChunkParams& params) {
  validate(params);
  if (total_tokens <= params.size) return 1;
  const std::size_t stride = params.stride();
  return (total_tokens - params.size + stride - 1) / stride + 1;
}

std::vector<Chunk> chunk_document(const Document& doc, const ChunkParams& params) {
  validate(params);
  const auto tokens = whitespace_tokens(doc);
  const std::size_t n = chunk_count(tokens.size(), params);
  std::vector<Chunk> chunks;
  chunks.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Chunk c;
    c.chunk_index = i;
    c.first_token = i * params.stride();
    const std::size_t last = std::min(c.first_token + params.size, tokens.size());
    c.token_count = last - c.first_token;
    c.span.start = i == 0 || tokens.empty() ? 0 : tokens[c.first_token].start;
    c.span.end = i + 1 == n || last >= tokens.size() ? doc.length() : tokens[last].start;
    c.text = std::string(doc.text(c.span));
    chunks.push_back(std::move(c));
  }
  return chunks;
}

}  // namespace counterpoint::rag

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
#include <string>
#include <vector>

#include "counterpoint/core/document.hpp"

namespace counterpoint::rag {

struct ChunkParams {
  std::size_t size = 300;    // tokens per chunk
  std::size_t overlap = 60;  // tokens shared with the next chunk

  std::size_t stride() const { return size - overlap; }
};

struct Chunk {
  std::size_t chunk_index = 0;
  Span span;
  std::string text;
  std::size_t token_count = 0;
  std::size_t first_token = 0;
};

// Maximal runs of non-whitespace code points.
std::vector<Span> whitespace_tokens(const Document& doc);

// 1 if total <= size, else ceil((total - size) / stride) + 1. Zero tokens
// still yields one chunk.
std::size_t chunk_count(std::size_t total_tokens, const ChunkParams& params);

// Throws InvalidChunkParams unless 0 <= overlap < size.
void validate(const ChunkParams& params);

// Chunk i covers tokens [i*stride, i*stride + size). Its span starts at its
// first token (0 for chunk 0) and runs up to the next chunk-external token, so
// adjacent spans tile the body including the whitespace between tokens. The
// last chunk ends at the end of the body.
std::vector<Chunk> chunk_document(const Document& doc, const ChunkParams& params = {});

}  // namespace counterpoint::rag

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
#include <string>
#include <string_view>
#include <vector>

#include "counterpoint/core/document.hpp"
#include "counterpoint/llm/gateway.hpp"
#include "counterpoint/rag/chunker.hpp"

namespace counterpoint::rag {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

struct IndexRecord {
  std::uint32_t chunk_index = 0;
  llm::EmbeddingVector vector;

  friend bool operator==(const IndexRecord&, const IndexRecord&) = default;
};

// Immutable once built; records are in chunk order.
struct VectorIndex {
  std::string doc_id;
  std::size_t dimension = 0;
  ChunkParams params;
  std::vector<IndexRecord> records;

  bool empty() const { return records.empty(); }
};

// Chunks `doc` and embeds every chunk. Any embedding failure propagates
// before anything is returned, so callers never see a partial index.
VectorIndex build_index(const Document& doc, const llm::Gateway& gateway, const ChunkParams& params = {},
                        std::size_t batch_size = 16);

// Binary layout, all integers little-endian:
//   "CPVI" u32 version u32 doc_id_len doc_id u32 dimension u32 count
//   u32 chunk_size u32 chunk_overlap
//   count x (u32 chunk_index, dimension x f32)
std::string serialize_index(const VectorIndex& index);

// Throws UnknownSchemaVersion for a version other than kIndexFormatVersion
// and CorruptArtifact for anything else malformed.
VectorIndex deserialize_index(std::string_view bytes);

void save_index(const VectorIndex& index, const std::filesystem::path& path);
VectorIndex load_index(const std::filesystem::path& path);

}  // namespace counterpoint::rag

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

#include "counterpoint/rag/index.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "counterpoint/core/files.hpp"
#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::rag {

namespace {

constexpr std::string_view kMagic = "CPVI";

std::string trimmed(std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && utf8::is_whitespace(cps[b])) ++b;
  while (e > b && utf8::is_whitespace(cps[e - 1])) --e;
  return utf8::encode(std::u32string_view(cps).substr(b, e - b));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
}

std::uint32_t narrow(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " does not fit the index format");
  }
  return static_cast<std::uint32_t>(v);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::string_view take(std::size_t n) {
    need(n);
    const auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw Error(ErrorCode::CorruptArtifact, "index file is truncated");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

VectorIndex build_index(const Document& doc, const llm::Gateway& gateway, const ChunkParams& params,
                        std::size_t batch_size) {
  if (batch_size == 0) throw Error(ErrorCode::InvalidArgument, "batch size must be positive");
  const auto chunks = chunk_document(doc, params);
  VectorIndex index;
  index.doc_id = doc.id();
  index.params = params;
  index.records.reserve(chunks.size());
  for (std::size_t b = 0; b < chunks.size(); b += batch_size) {
    std::vector<std::string> texts;
    for (std::size_t i = b; i < std::min(chunks.size(), b + batch_size); ++i) {
      texts.push_back(trimmed(chunks[i].text));
    }
    auto vectors = gateway.embed(texts);
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      if (index.dimension == 0) index.dimension = vectors[j].dimension();
      if (vectors[j].dimension() != index.dimension) {
        throw Error(ErrorCode::ProviderUnavailable, "embedding dimension changed during index build");
      }
      index.records.push_back({static_cast<std::uint32_t>(b + j), std::move(vectors[j])});
    }
  }
  return index;
}

std::string serialize_index(const VectorIndex& index) {
  std::string out;
  out.reserve(32 + index.doc_id.size() + index.records.size() * (4 + 4 * index.dimension));
  out.append(kMagic);
  put_u32(out, kIndexFormatVersion);
  put_u32(out, narrow(index.doc_id.size(), "doc id"));
  out.append(index.doc_id);
  put_u32(out, narrow(index.dimension, "dimension"));
  put_u32(out, narrow(index.records.size(), "record count"));
  put_u32(out, narrow(index.params.size, "chunk size"));
  put_u32(out, narrow(index.params.overlap, "chunk overlap"));
  for (const auto& r : index.records) {
    if (r.vector.dimension() != index.dimension) {
      throw Error(ErrorCode::InvalidArgument, "record dimension does not match index dimension");
    }
    put_u32(out, r.chunk_index);
    for (float f : r.vector.components) put_u32(out, std::bit_cast<std::uint32_t>(f));
  }
  return out;
}

VectorIndex deserialize_index(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(kMagic.size()) != kMagic) throw Error(ErrorCode::CorruptArtifact, "not a vector index file");
  const std::uint32_t version = in.u32();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::UnknownSchemaVersion, "unsupported index format version " + std::to_string(version));
  }
  VectorIndex index;
  index.doc_id = std::string(in.take(in.u32()));
  index.dimension = in.u32();
  const std::uint32_t count = in.u32();
  index.params.size = in.u32();
  index.params.overlap = in.u32();
  const std::size_t record_bytes = 4 + 4 * index.dimension;
  if (record_bytes * count != in.remaining()) {
    throw Error(ErrorCode::CorruptArtifact, "index record section has the wrong length");
  }
  if (count > 0 && index.dimension == 0) throw Error(ErrorCode::CorruptArtifact, "index has zero dimension");
  index.records.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    auto& r = index.records[i];
    r.chunk_index = in.u32();
    if (r.chunk_index != i) throw Error(ErrorCode::CorruptArtifact, "index records are out of order");
    r.vector.components.resize(index.dimension);
    for (auto& f : r.vector.components) {
      f = std::bit_cast<float>(in.u32());
      if (!std::isfinite(f)) throw Error(ErrorCode::CorruptArtifact, "index holds a non-finite component");
    }
  }
  return index;
}

void save_index(const VectorIndex& index, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_index(index));
}

VectorIndex load_index(const std::filesystem::path& path) { return deserialize_index(read_file(path)); }

}  // namespace counterpoint::rag

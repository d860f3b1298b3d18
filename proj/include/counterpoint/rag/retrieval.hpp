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

#include "counterpoint/llm/gateway.hpp"
#include "counterpoint/rag/index.hpp"

namespace counterpoint::rag {

struct ScoredChunk {
  std::size_t chunk_index = 0;
  double score = 0.0;

  friend bool operator==(const ScoredChunk&, const ScoredChunk&) = default;
};

// Cosine similarity accumulated in double. A zero vector on either side
// scores -infinity so it ranks last instead of producing NaN.
double cosine(const std::vector<float>& a, const std::vector<float>& b);

// One score per record, in record order. The parallel kernel must agree with
// the serial one bit for bit; both accumulate each record in the same order.
std::vector<double> score_records_serial(const std::vector<float>& query, const VectorIndex& index);
std::vector<double> score_records_parallel(const std::vector<float>& query, const VectorIndex& index);

// Top k by score descending, ties by ascending chunk_index; k is clipped to
// the record count.
std::vector<ScoredChunk> top_k(const VectorIndex& index, const std::vector<double>& scores, std::size_t k);

std::vector<ScoredChunk> rank(const VectorIndex& index, const llm::EmbeddingVector& query, std::size_t k,
                              bool parallel = true);

// Embeds `query` through the gateway and ranks. Throws EmptyIndex on an empty
// index and InvalidArgument when k is 0 or the query is blank.
std::vector<ScoredChunk> retrieve(const VectorIndex& index, const std::string& query, const llm::Gateway& gateway,
                                  std::size_t k = 4);

}  // namespace counterpoint::rag

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

#include "counterpoint/rag/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "counterpoint/core/utf8.hpp"
#include "counterpoint/error.hpp"

namespace counterpoint::rag {

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a[i];
    const double y = b[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0 || a.size() != b.size()) return -std::numeric_limits<double>::infinity();
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> score_records_serial(const std::vector<float>& query, const VectorIndex& index) {
  std::vector<double> scores(index.records.size());
  for (std::size_t i = 0; i < index.records.size(); ++i) scores[i] = cosine(query, index.records[i].vector.components);
  return scores;
}

std::vector<double> score_records_parallel(const std::vector<float>& query, const VectorIndex& index) {
  const auto n = static_cast<std::ptrdiff_t>(index.records.size());
  std::vector<double> scores(index.records.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    scores[static_cast<std::size_t>(i)] = cosine(query, index.records[static_cast<std::size_t>(i)].vector.components);
  }
  return scores;
}

std::vector<ScoredChunk> top_k(const VectorIndex& index, const std::vector<double>& scores, std::size_t k) {
  std::vector<std::size_t> order(index.records.size());
  std::iota(order.begin(), order.end(), 0);
  const auto before = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return index.records[a].chunk_index < index.records[b].chunk_index;
  };
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), before);
  std::vector<ScoredChunk> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back({index.records[order[i]].chunk_index, scores[order[i]]});
  return out;
}

std::vector<ScoredChunk> rank(const VectorIndex& index, const llm::EmbeddingVector& query, std::size_t k,
                              bool parallel) {
  const auto scores = parallel ? score_records_parallel(query.components, index)
                               : score_records_serial(query.components, index);
  return top_k(index, scores, k);
}

std::vector<ScoredChunk> retrieve(const VectorIndex& index, const std::string& query, const llm::Gateway& gateway,
                                  std::size_t k) {
  if (index.empty()) throw Error(ErrorCode::EmptyIndex, "vector index for " + index.doc_id + " has no records");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  const auto vectors = gateway.embed({query});
  if (vectors.front().dimension() != index.dimension) {
    throw Error(ErrorCode::ProviderUnavailable, "query embedding dimension does not match the index");
  }
  return rank(index, vectors.front(), k);
}

}  // namespace counterpoint::rag

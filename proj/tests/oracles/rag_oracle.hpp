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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ASCII whitespace split; test documents only use ASCII whitespace.
inline std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == '\n' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Token start of every chunk by walking the stride until the window reaches
// the end of the token list.
inline std::vector<std::size_t> chunk_starts(std::size_t total, std::size_t size, std::size_t overlap) {
  std::vector<std::size_t> starts{0};
  const std::size_t stride = size - overlap;
  while (starts.back() + size < total) starts.push_back(starts.back() + stride);
  return starts;
}

inline double cosine(const std::vector<float>& a, const std::vector<float>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    na += static_cast<double>(a[i]) * static_cast<double>(a[i]);
    nb += static_cast<double>(b[i]) * static_cast<double>(b[i]);
  }
  if (na == 0 || nb == 0) return -std::numeric_limits<double>::infinity();
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Full ranking of (chunk_index, score), best first, ties by chunk_index.
inline std::vector<std::pair<std::size_t, double>> rank_all(const std::vector<float>& query,
                                                           const std::vector<std::vector<float>>& vectors) {
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) out.emplace_back(i, cosine(query, vectors[i]));
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  return out;
}

}  // namespace oracle

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

#include "counterpoint/annotate/fuzzy_kernel.hpp"

#include <algorithm>

namespace counterpoint::annotate {

std::size_t lcs_length(std::span<const int> a, std::span<const int> b) {
  if (a.empty() || b.empty()) return 0;
  // Rolling single row over b.
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      if (a[i - 1] >= 0 && a[i - 1] == b[j - 1]) {
        row[j] = diag + 1;
      } else {
        row[j] = std::max(row[j], row[j - 1]);
      }
      diag = up;
    }
  }
  return row[b.size()];
}

double token_similarity(std::span<const int> claim, std::span<const int> window) {
  const std::size_t total = claim.size() + window.size();
  if (total == 0) return 0.0;
  return 2.0 * static_cast<double>(lcs_length(claim, window)) / static_cast<double>(total);
}

std::vector<double> score_windows_serial(const TokenIds& claim, const std::vector<TokenIds>& windows) {
  std::vector<double> scores(windows.size());
  for (std::size_t w = 0; w < windows.size(); ++w) scores[w] = token_similarity(claim, windows[w]);
  return scores;
}

std::vector<double> score_windows_parallel(const TokenIds& claim, const std::vector<TokenIds>& windows) {
  std::vector<double> scores(windows.size());
  const auto count = static_cast<std::ptrdiff_t>(windows.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t w = 0; w < count; ++w) {
    scores[static_cast<std::size_t>(w)] = token_similarity(claim, windows[static_cast<std::size_t>(w)]);
  }
  return scores;
}

}  // namespace counterpoint::annotate

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
#include <span>
#include <vector>

namespace counterpoint::annotate {

// Token sequences are interned to ints; -1 marks a token absent from the
// claim, which can never contribute to the LCS.
using TokenIds = std::vector<int>;

std::size_t lcs_length(std::span<const int> a, std::span<const int> b);

// 2 * LCS / (|a| + |b|); 0 when both are empty.
double token_similarity(std::span<const int> claim, std::span<const int> window);

// Similarity of the claim against every window. The parallel kernel and the
// serial reference produce identical vectors.
std::vector<double> score_windows_serial(const TokenIds& claim, const std::vector<TokenIds>& windows);
std::vector<double> score_windows_parallel(const TokenIds& claim, const std::vector<TokenIds>& windows);

}  // namespace counterpoint::annotate

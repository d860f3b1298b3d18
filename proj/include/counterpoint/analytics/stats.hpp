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
#include <optional>
#include <string_view>
#include <vector>

namespace counterpoint::analytics {

enum class UTestMethod { Exact, NormalApprox };

std::string_view to_string(UTestMethod method);

struct UTestResult {
  double u = 0.0;    // min(U_a, U_b)
  double u_a = 0.0;  // R_a - n1(n1+1)/2
  double u_b = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  UTestMethod method = UTestMethod::Exact;
  std::optional<double> z;  // NormalApprox only; <= 0
  double p_two_sided = 1.0;
  bool tie_correction_applied = false;
  // Every pooled value identical: no ordering information, p = 1.
  bool degenerate = false;
};

inline constexpr std::size_t kExactMaxPooled = 20;

// Midranks of the pooled sample a ++ b, in that order.
std::vector<double> midranks(const std::vector<double>& pooled);

// Two-sided Mann-Whitney U test. For n1 + n2 <= 20 the p-value is the exact
// permutation probability P(|U_a - n1 n2 / 2| >= |observed deviation|) over
// all C(n1+n2, n1) assignments of the observed midranks to group a. Larger
// samples use the tie-corrected normal approximation with a 0.5 continuity
// correction. Throws InvalidArgument on an empty group or a non-finite value.
UTestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace counterpoint::analytics

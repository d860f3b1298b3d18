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

#include "counterpoint/analytics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "counterpoint/error.hpp"

namespace counterpoint::analytics {

namespace {

// Number of size-n1 subsets of the pooled doubled ranks whose doubled U_a
// deviates from its mean by at least `observed_dev2`, and C(N, n1).
std::pair<std::uint64_t, std::uint64_t> exact_tail(const std::vector<long>& ranks2, std::size_t n1,
                                                   long observed_dev2) {
  const std::size_t n = ranks2.size();
  const long max_sum = std::accumulate(ranks2.begin(), ranks2.end(), 0L);
  // dp[k][s]: subsets of size k with doubled rank sum s.
  std::vector<std::vector<std::uint64_t>> dp(n1 + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(max_sum) + 1));
  dp[0][0] = 1;
  for (long r : ranks2) {
    for (std::size_t k = n1; k >= 1; --k) {
      auto& row = dp[k];
      const auto& prev = dp[k - 1];
      for (long s = max_sum; s >= r; --s) row[static_cast<std::size_t>(s)] += prev[static_cast<std::size_t>(s - r)];
    }
  }
  const long n1l = static_cast<long>(n1);
  const long n2l = static_cast<long>(n - n1);
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (long s = 0; s <= max_sum; ++s) {
    const std::uint64_t c = dp[n1][static_cast<std::size_t>(s)];
    if (c == 0) continue;
    total += c;
    const long dev2 = std::labs(s - n1l * (n1l + 1) - n1l * n2l);
    if (dev2 >= observed_dev2) hits += c;
  }
  return {hits, total};
}

}  // namespace

std::string_view to_string(UTestMethod method) {
  return method == UTestMethod::Exact ? "Exact" : "NormalApprox";
}

std::vector<double> midranks(const std::vector<double>& pooled) {
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
  std::vector<double> ranks(pooled.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

UTestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "both samples need at least one value");
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  if (!std::all_of(pooled.begin(), pooled.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::InvalidArgument, "samples must be finite");
  }

  UTestResult r;
  r.n1 = a.size();
  r.n2 = b.size();
  const std::size_t n = pooled.size();
  const double n1 = static_cast<double>(r.n1);
  const double n2 = static_cast<double>(r.n2);
  const double nd = static_cast<double>(n);
  const auto ranks = midranks(pooled);

  // Doubled ranks are integers, which keeps U and the exact path free of
  // rounding.
  std::vector<long> ranks2(n);
  for (std::size_t i = 0; i < n; ++i) ranks2[i] = std::lround(2.0 * ranks[i]);
  const long ra2 = std::accumulate(ranks2.begin(), ranks2.begin() + static_cast<std::ptrdiff_t>(r.n1), 0L);
  const long n1l = static_cast<long>(r.n1);
  const long n2l = static_cast<long>(r.n2);
  const long ua2 = ra2 - n1l * (n1l + 1);
  r.u_a = static_cast<double>(ua2) / 2.0;
  r.u_b = n1 * n2 - r.u_a;
  r.u = std::min(r.u_a, r.u_b);

  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  {
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
  }
  r.tie_correction_applied = tie_term > 0.0;
  r.method = n <= kExactMaxPooled ? UTestMethod::Exact : UTestMethod::NormalApprox;
  r.degenerate = std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled.front(); });

  if (r.degenerate) {
    r.p_two_sided = 1.0;
    if (r.method == UTestMethod::NormalApprox) r.z = 0.0;
    return r;
  }

  if (r.method == UTestMethod::Exact) {
    const long observed_dev2 = std::labs(ua2 - n1l * n2l);
    const auto [hits, total] = exact_tail(ranks2, r.n1, observed_dev2);
    r.p_two_sided = std::clamp(static_cast<double>(hits) / static_cast<double>(total), 0.0, 1.0);
    return r;
  }

  const double mean = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
  const double z = std::min(0.0, r.u - mean + 0.5) / std::sqrt(var);
  r.z = z;
  r.p_two_sided = std::clamp(std::erfc(std::fabs(z) / std::sqrt(2.0)), 0.0, 1.0);
  return r;
}

}  // namespace counterpoint::analytics

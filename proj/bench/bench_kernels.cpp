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

// Serial reference vs OpenMP kernels for fuzzy window scoring and retrieval.

#include <benchmark/benchmark.h>

#include <random>

#include "counterpoint/annotate/fuzzy_kernel.hpp"
#include "counterpoint/rag/retrieval.hpp"

namespace {

using counterpoint::annotate::TokenIds;

struct WindowCase {
  TokenIds claim;
  std::vector<TokenIds> windows;
};

WindowCase make_windows(std::size_t count) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> tok(-1, 40);
  WindowCase c;
  c.claim.resize(24);
  for (auto& t : c.claim) t = tok(rng);
  c.windows.resize(count);
  for (auto& w : c.windows) {
    w.resize(24 + rng() % 12);
    for (auto& t : w) t = tok(rng);
  }
  return c;
}

counterpoint::rag::VectorIndex make_index(std::size_t count, std::size_t dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<float> g;
  counterpoint::rag::VectorIndex index;
  index.doc_id = "bench";
  index.dimension = dim;
  index.records.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    index.records[i].chunk_index = static_cast<std::uint32_t>(i);
    index.records[i].vector.components.resize(dim);
    for (auto& x : index.records[i].vector.components) x = g(rng);
  }
  return index;
}

void BM_WindowsSerial(benchmark::State& state) {
  const auto c = make_windows(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(counterpoint::annotate::score_windows_serial(c.claim, c.windows));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WindowsParallel(benchmark::State& state) {
  const auto c = make_windows(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(counterpoint::annotate::score_windows_parallel(c.claim, c.windows));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CosineSerial(benchmark::State& state) {
  const auto index = make_index(static_cast<std::size_t>(state.range(0)), 256, 7);
  const auto query = make_index(1, 256, 8).records.front().vector.components;
  for (auto _ : state) benchmark::DoNotOptimize(counterpoint::rag::score_records_serial(query, index));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CosineParallel(benchmark::State& state) {
  const auto index = make_index(static_cast<std::size_t>(state.range(0)), 256, 7);
  const auto query = make_index(1, 256, 8).records.front().vector.components;
  for (auto _ : state) benchmark::DoNotOptimize(counterpoint::rag::score_records_parallel(query, index));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_WindowsSerial)->Arg(200)->Arg(2000)->Arg(20000);
BENCHMARK(BM_WindowsParallel)->Arg(200)->Arg(2000)->Arg(20000);
BENCHMARK(BM_CosineSerial)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(BM_CosineParallel)->Arg(1000)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();

// Copyright 2026 The kf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "kf/catalog.hpp"
#include "kf/series.hpp"

namespace {

kf::Series partition_series(int order) { return kf::make_family("P").exact(order)->series; }

void BM_Mul(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const kf::Series p = partition_series(order);
  for (auto _ : state) benchmark::DoNotOptimize(kf::mul(p, p));
  state.SetComplexityN(order);
}
BENCHMARK(BM_Mul)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

// Binomial power prefix: the coefficient lattice of (1 + z)^n.
void BM_PowerPrefix(benchmark::State& state) {
  const long n = state.range(0);
  const int k = static_cast<int>(n / 2);
  const kf::Series lin = kf::Series::from_integers({1, 1}).truncated(k);
  for (auto _ : state) benchmark::DoNotOptimize(kf::power_prefix(lin, n, k));
}
BENCHMARK(BM_PowerPrefix)->RangeMultiplier(4)->Range(64, 4096);

void BM_PowerPrefixDense(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const kf::Series e = kf::make_family("exp").exact(k)->series;
  for (auto _ : state) benchmark::DoNotOptimize(kf::power_prefix(e, 1000, k));
}
BENCHMARK(BM_PowerPrefixDense)->RangeMultiplier(2)->Range(32, 256);

void BM_PartitionsPentagonal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kf::partitions_pentagonal(n));
}
BENCHMARK(BM_PartitionsPentagonal)->RangeMultiplier(4)->Range(256, 4096);

void BM_LagrangeInvert(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const kf::Series g = kf::make_family("geom").exact(order)->series;
  for (auto _ : state) benchmark::DoNotOptimize(kf::lagrange_invert(g, order));
}
BENCHMARK(BM_LagrangeInvert)->Arg(32)->Arg(64)->Arg(128);

}  // namespace
BENCHMARK_MAIN();

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

#include "kf/asym.hpp"
#include "kf/catalog.hpp"
#include "kf/khinchin.hpp"
#include "kf/large_powers.hpp"

namespace {

void BM_HaymanPartitions(benchmark::State& state) {
  const kf::Family p = kf::make_family("P");
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(kf::hayman_estimate(p, n));
}
BENCHMARK(BM_HaymanPartitions)->Arg(100)->Arg(1000)->Arg(10000);

void BM_HaymanBell(benchmark::State& state) {
  const kf::Family b = kf::make_family("bell");
  for (auto _ : state) benchmark::DoNotOptimize(kf::hayman_estimate(b, state.range(0)));
}
BENCHMARK(BM_HaymanBell)->Arg(100)->Arg(1000);

void BM_FamilyMoments(benchmark::State& state) {
  const kf::Family p = kf::make_family("P");
  for (auto _ : state) benchmark::DoNotOptimize(kf::variance(p, 0.99));
}
BENCHMARK(BM_FamilyMoments);

void BM_StrongGaussianIntegral(benchmark::State& state) {
  const kf::Family e = kf::make_family("exp");
  for (auto _ : state) benchmark::DoNotOptimize(kf::strong_gaussian_integral(e, 100.0));
}
BENCHMARK(BM_StrongGaussianIntegral)->Unit(benchmark::kMillisecond);

void BM_ComparableEstimate(benchmark::State& state) {
  const kf::PowerCoeffQuery q{kf::make_family("poly:1,1,1"), 10000, 10000, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(kf::estimate_comparable(q, 0.1, 1.9));
}
BENCHMARK(BM_ComparableEstimate);

}  // namespace

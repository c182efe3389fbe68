// Copyright 2026 The memetic Authors.
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


#include <benchmark/benchmark.h>

#include "memetic/driver.h"
#include "memetic/evaluator.h"
#include "memetic/landscapes.h"
#include "memetic/localsearch.h"
#include "memetic/rng.h"

namespace memetic {
namespace {

void BM_Neighbors(benchmark::State& state) {
  const auto space = default_cnn_space();
  Rng rng(1);
  const auto c = random_chromosome(space, rng);
  for (auto _ : state) benchmark::DoNotOptimize(neighbors(space, c));
}
BENCHMARK(BM_Neighbors);

void BM_HashedEvaluate(benchmark::State& state) {
  const auto space = default_cnn_space();
  HashedLandscape land(space, 7);
  Rng rng(2);
  const auto c = random_chromosome(space, rng);
  for (auto _ : state) benchmark::DoNotOptimize(land.evaluate(c));
}
BENCHMARK(BM_HashedEvaluate);

void BM_CachedHit(benchmark::State& state) {
  const auto space = default_cnn_space();
  HashedLandscape land(space, 7);
  CachedEvaluator cache(land);
  Rng rng(3);
  const auto c = random_chromosome(space, rng);
  cache.evaluate(c);
  for (auto _ : state) benchmark::DoNotOptimize(cache.evaluate(c));
}
BENCHMARK(BM_CachedHit);

void BM_HillClimb(benchmark::State& state) {
  const auto space = default_cnn_space();
  HashedLandscape land(space, 7);
  const auto strategy = static_cast<HcStrategy>(state.range(0));
  Rng rng(4);
  for (auto _ : state) {
    const auto start = random_chromosome(space, rng);
    benchmark::DoNotOptimize(hill_climb(space, {start, land.evaluate(start)}, land,
                                        strategy, HcBudget::unlimited(), rng));
  }
}
BENCHMARK(BM_HillClimb)
    ->Arg(static_cast<int>(HcStrategy::kFirstImprovement))
    ->Arg(static_cast<int>(HcStrategy::kSteepestAscent));

void BM_Run(benchmark::State& state) {
  RunConfig c;
  c.algorithm = static_cast<Algorithm>(state.range(0));
  c.max_generations = 20;
  HashedLandscape land(c.space, 7);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    c.seed = seed++;
    benchmark::DoNotOptimize(run(c, land));
  }
}
BENCHMARK(BM_Run)
    ->Arg(static_cast<int>(Algorithm::kHybrid))
    ->Arg(static_cast<int>(Algorithm::kGa))
    ->Arg(static_cast<int>(Algorithm::kHc));

}  // namespace
}  // namespace memetic

BENCHMARK_MAIN();

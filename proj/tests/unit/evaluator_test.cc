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

#include "memetic/evaluator.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <thread>

#include "memetic/errors.h"
#include "memetic/landscapes.h"
#include "memetic/rng.h"
#include "support.h"

namespace memetic {
namespace {

using testing::chrom;
using testing::CountingEvaluator;
using testing::FunctionEvaluator;
using testing::space_of;

TEST(CheckedFitness, AcceptsUnitIntervalOnly) {
  EXPECT_EQ(checked_fitness(0.0), 0.0);
  EXPECT_EQ(checked_fitness(1.0), 1.0);
  EXPECT_EQ(checked_fitness(0.47), 0.47);
  EXPECT_THROW(checked_fitness(1.5), EvaluationError);
  EXPECT_THROW(checked_fitness(-0.1), EvaluationError);
  EXPECT_THROW(checked_fitness(std::nan("")), EvaluationError);
  EXPECT_THROW(checked_fitness(std::numeric_limits<double>::infinity()),
               EvaluationError);
}

TEST(Cache, SecondCallIsHit) {
  HashedLandscape land(space_of({3, 3}), 1);
  CountingEvaluator counting(land);
  CachedEvaluator cache(counting);
  const double a = cache.evaluate(chrom({1, 2}));
  const double b = cache.evaluate(chrom({1, 2}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(counting.calls, 1u);
  EXPECT_EQ(cache.hits(), 1u);
  EXPECT_EQ(cache.misses(), 1u);
  EXPECT_TRUE(cache.contains(chrom({1, 2})));
}

TEST(Cache, TwoDistinctChromosomesTwoCalls) {
  HashedLandscape land(space_of({3, 3}), 1);
  CountingEvaluator counting(land);
  CachedEvaluator cache(counting);
  cache.evaluate(chrom({0, 0}));
  cache.evaluate(chrom({0, 1}));
  EXPECT_EQ(counting.calls, 2u);
  EXPECT_EQ(cache.size(), 2u);
}

TEST(Cache, BatchDeduplicatesAndKeepsOrder) {
  HashedLandscape land(space_of({3, 3}), 4);
  CountingEvaluator counting(land);
  CachedEvaluator cache(counting);
  std::vector<Chromosome> batch{chrom({0, 1}), chrom({2, 2}), chrom({0, 1})};
  const auto out = cache.evaluate_many(batch);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], land.evaluate(chrom({0, 1})));
  EXPECT_EQ(out[1], land.evaluate(chrom({2, 2})));
  EXPECT_EQ(out[0], out[2]);
  EXPECT_EQ(counting.calls, 2u);
  EXPECT_EQ(cache.misses(), 2u);
  EXPECT_EQ(cache.hits(), 1u);
}

TEST(Cache, FailuresAreNotCached) {
  int calls = 0;
  FunctionEvaluator flaky([&](const Chromosome&) -> double {
    if (++calls == 1) throw EvaluationError("transient");
    return 0.25;
  });
  CachedEvaluator cache(flaky);
  EXPECT_THROW(cache.evaluate(chrom({0})), EvaluationError);
  EXPECT_FALSE(cache.contains(chrom({0})));
  EXPECT_EQ(cache.evaluate(chrom({0})), 0.25);
  EXPECT_EQ(cache.misses(), 2u);
  EXPECT_EQ(cache.evaluate(chrom({0})), 0.25);
  EXPECT_EQ(cache.hits(), 1u);
}

TEST(Cache, OutOfRangeInnerValueRejected) {
  FunctionEvaluator bad([](const Chromosome&) { return 2.0; });
  CachedEvaluator cache(bad);
  EXPECT_THROW(cache.evaluate(chrom({0})), EvaluationError);
  EXPECT_EQ(cache.size(), 0u);
}

// Property: under concurrent use hits + misses equals calls and misses never
// exceeds the distinct chromosomes requested.
TEST(Cache, ConcurrentUseKeepsCountersConsistent) {
  const auto space = space_of({4, 4, 4});
  HashedLandscape land(space, 3);
  CachedEvaluator cache(land);
  constexpr int kThreads = 4;
  constexpr int kCalls = 5000;
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      Rng rng(100 + t);
      for (int i = 0; i < kCalls; ++i) {
        const auto c = random_chromosome(space, rng);
        EXPECT_EQ(cache.evaluate(c), land.evaluate(c));
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(cache.hits() + cache.misses(), std::uint64_t(kThreads) * kCalls);
  EXPECT_LE(cache.size(), 64u);
  EXPECT_GE(cache.misses(), cache.size());
}

}  // namespace
}  // namespace memetic

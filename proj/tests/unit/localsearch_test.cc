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

#include "memetic/localsearch.h"

#include <gtest/gtest.h>

#include <cmath>

#include "memetic/errors.h"
#include "memetic/landscapes.h"
#include "memetic/rng.h"
#include "support.h"

namespace memetic {
namespace {

using testing::chrom;
using testing::CountingEvaluator;
using testing::space_of;
using testing::uniform_space;

constexpr HcStrategy kStrategies[] = {HcStrategy::kSteepestAscent,
                                      HcStrategy::kFirstImprovement};

EvaluatedChromosome scored(FitnessEvaluator& e, const Chromosome& c) {
  return {c, e.evaluate(c)};
}

TEST(HillClimb, GlobalOptimumIsFixedPoint) {
  const auto space = space_of({2, 2});
  HashedLandscape land(space, 3);
  const auto opt = brute_force_optimum(space, land);
  for (auto strategy : kStrategies) {
    CountingEvaluator counting(land);
    Rng rng(1);
    const auto r = hill_climb(space, opt, counting, strategy, HcBudget{}, rng);
    EXPECT_EQ(r.best, opt);
    EXPECT_EQ(r.evaluations_used, 2u);
    EXPECT_EQ(counting.calls, 2u);
    EXPECT_FALSE(r.budget_exhausted);
  }
}

TEST(HillClimb, SeparableReachesOptimumFromEveryStart) {
  const auto space = space_of({3, 4, 2, 3});
  auto land = SeparableLandscape::from_seed(space, 12);
  const double optimum = brute_force_optimum(space, land).fitness;
  for (auto strategy : kStrategies) {
    Rng rng(2);
    for_each_chromosome(space, [&](const Chromosome& c) {
      const auto r =
          hill_climb(space, scored(land, c), land, strategy, HcBudget{}, rng);
      ASSERT_EQ(r.best.fitness, optimum);
    });
  }
}

TEST(HillClimb, TrapBasinStartEndsAtTrap) {
  const auto space = uniform_space(4, 3);
  auto land = TrapLandscape::with_defaults(space);
  const double global = brute_force_optimum(space, land).fitness;
  // Any start at distance >= 2 from the target has no improving neighbor
  // leading to it.
  const auto start = chrom({1, 0, 2, 0});
  ASSERT_GE(hamming_distance(start, land.target()), 2u);
  for (auto strategy : kStrategies) {
    Rng rng(3);
    const auto r =
        hill_climb(space, scored(land, start), land, strategy, HcBudget{}, rng);
    EXPECT_EQ(r.best.fitness, land.trap_value());
    EXPECT_LT(r.best.fitness, global);
  }
}

TEST(HillClimb, BudgetIsRespected) {
  const auto space = default_cnn_space();
  HashedLandscape land(space, 9);
  Rng gen(4);
  for (std::uint64_t budget : {1ull, 2ull, 5ull, 21ull, 42ull}) {
    for (auto strategy : kStrategies) {
      for (int trial = 0; trial < 30; ++trial) {
        CountingEvaluator counting(land);
        const auto start = scored(land, random_chromosome(space, gen));
        const auto r =
            hill_climb(space, start, counting, strategy, HcBudget{budget}, gen);
        ASSERT_LE(r.evaluations_used, budget);
        ASSERT_EQ(r.evaluations_used, counting.calls);
        ASSERT_GE(r.best.fitness, start.fitness);
      }
    }
  }
  Rng rng(0);
  EXPECT_THROW(hill_climb(space, scored(land, chrom(std::vector<Allele>(10, 0))),
                          land, HcStrategy::kSteepestAscent, HcBudget{0}, rng),
               ConfigError);
}

// Properties: strictly increasing trajectory, termination bound without a
// budget, and the fitness fixed point.
TEST(HillClimb, PropertyMonotoneTerminatingFixedPoint) {
  Rng gen(55);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> sizes(2 + gen.uniform_index(4));
    for (auto& s : sizes) s = 2 + gen.uniform_index(3);
    const auto space = space_of(sizes);
    HashedLandscape land(space, gen.next_u64());
    const auto strategy = kStrategies[gen.uniform_index(2)];
    const auto start = scored(land, random_chromosome(space, gen));
    const auto r = hill_climb(space, start, land, strategy, HcBudget{}, gen);
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
      ASSERT_GT(r.trajectory[i], r.trajectory[i - 1]);
    }
    ASSERT_EQ(r.trajectory.back(), r.best.fitness);
    ASSERT_LE(r.evaluations_used, *space.cardinality() * space.neighborhood_size());
    const auto again = hill_climb(space, r.best, land, strategy, HcBudget{}, gen);
    ASSERT_EQ(again.best.fitness, r.best.fitness);
    if (strategy == HcStrategy::kSteepestAscent) {
      ASSERT_EQ(again.best.chromosome, r.best.chromosome);
    }
  }
}

TEST(HillClimb, SteepestTakesBestNeighbor) {
  const auto space = space_of({4});
  testing::FunctionEvaluator f([](const Chromosome& c) {
    static const double v[] = {0.1, 0.3, 0.9, 0.5};
    return v[c[0]];
  });
  Rng rng(0);
  const auto r = hill_climb(space, {chrom({0}), 0.1}, f,
                            HcStrategy::kSteepestAscent, HcBudget{}, rng);
  EXPECT_EQ(r.best.chromosome, chrom({2}));
  EXPECT_EQ(r.trajectory, (std::vector<double>{0.1, 0.9}));
}

TEST(MutateChildren, LocallyOptimalChildrenUnchanged) {
  const auto space = space_of({3, 3});
  auto land = SeparableLandscape::from_seed(space, 1);
  const auto opt = brute_force_optimum(space, land);
  Rng rng(0);
  const auto out = mutate_children(space, {opt, opt}, land,
                                   HcStrategy::kFirstImprovement, HcBudget{}, rng);
  EXPECT_EQ(out.children[0], opt);
  EXPECT_EQ(out.children[1], opt);
}

TEST(MutateChildren, SeparableBothReachOptimum) {
  const auto space = default_cnn_space();
  auto land = SeparableLandscape::from_seed(space, 21);
  const double optimum = land.evaluate(land.optimum());
  Rng rng(5);
  for (auto strategy : kStrategies) {
    const auto out = mutate_children(
        space, {scored(land, random_chromosome(space, rng)),
                scored(land, random_chromosome(space, rng))},
        land, strategy, HcBudget{}, rng);
    EXPECT_EQ(out.children[0].fitness, optimum);
    EXPECT_EQ(out.children[1].fitness, optimum);
  }
}

TEST(MutateChildren, BudgetOnePerChild) {
  const auto space = default_cnn_space();
  HashedLandscape land(space, 2);
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<EvaluatedChromosome> in{
        scored(land, random_chromosome(space, rng)),
        scored(land, random_chromosome(space, rng))};
    CountingEvaluator counting(land);
    const auto out = mutate_children(space, in, counting,
                                     HcStrategy::kSteepestAscent, HcBudget{1}, rng);
    EXPECT_LE(out.evaluations_used, 2u);
    EXPECT_EQ(counting.calls, out.evaluations_used);
    for (int i = 0; i < 2; ++i) {
      EXPECT_GE(out.children[i].fitness, in[i].fitness);
      EXPECT_LE(hamming_distance(out.children[i].chromosome, in[i].chromosome), 1u);
    }
  }
  EXPECT_THROW(mutate_children(space, {}, land, HcStrategy::kSteepestAscent,
                               HcBudget{}, rng),
               ContractError);
}

TEST(RandomRestart, SingleRestartEqualsOneClimb) {
  const auto space = default_cnn_space();
  HashedLandscape land(space, 4);
  for (auto strategy : kStrategies) {
    Rng a(77), b(77);
    const auto restart =
        random_restart_hc(space, 1, land, strategy, HcBudget{40}, a);
    const auto start = random_chromosome(space, b);
    const auto single =
        hill_climb(space, scored(land, start), land, strategy, HcBudget{40}, b);
    EXPECT_EQ(restart.best, single.best);
    EXPECT_EQ(restart.evaluations_used, 1 + single.evaluations_used);
  }
}

TEST(RandomRestart, SeparableOptimumRegardlessOfRestarts) {
  const auto space = space_of({3, 2, 4, 3});
  auto land = SeparableLandscape::from_seed(space, 8);
  const double optimum = brute_force_optimum(space, land).fitness;
  for (std::size_t restarts : {1u, 3u, 10u}) {
    Rng rng(restarts);
    EXPECT_EQ(random_restart_hc(space, restarts, land,
                                HcStrategy::kSteepestAscent, HcBudget{}, rng)
                  .best.fitness,
              optimum);
  }
}

TEST(RandomRestart, TotalBudgetCapsCalls) {
  const auto space = default_cnn_space();
  HashedLandscape land(space, 4);
  for (std::uint64_t cap : {1ull, 7ull, 50ull, 333ull}) {
    CountingEvaluator counting(land);
    Rng rng(cap);
    const auto r = random_restart_hc(space, 100, counting,
                                     HcStrategy::kFirstImprovement,
                                     default_hc_budget(space), rng, {}, {}, cap);
    EXPECT_LE(counting.calls, cap);
    EXPECT_EQ(counting.calls, r.evaluations_used);
  }
}

// Trap whose target basin is enumerated first: a start belongs to the target
// basin iff steepest ascent from it reaches the target.
TEST(RandomRestart, TrapFiftyRestartsFindTarget) {
  const auto space = uniform_space(6, 2);
  auto land = TrapLandscape::with_defaults(space);
  std::uint64_t in_trap_basin = 0;
  for_each_chromosome(space, [&](const Chromosome& c) {
    Rng rng(0);
    const auto r = hill_climb(space, scored(land, c), land,
                              HcStrategy::kSteepestAscent, HcBudget{}, rng);
    in_trap_basin += r.best.chromosome != land.target();
  });
  const double trap_share = double(in_trap_basin) / double(*space.cardinality());
  ASSERT_NEAR(trap_share, 0.9, 0.02);

  const double bound = 1.0 - std::pow(0.9, 50);
  int found = 0;
  constexpr int kMacroRuns = 100;
  for (int run = 0; run < kMacroRuns; ++run) {
    Rng rng(1000 + run);
    found += random_restart_hc(space, 50, land, HcStrategy::kSteepestAscent,
                               HcBudget{}, rng)
                 .best.chromosome == land.target();
  }
  EXPECT_GE(found / double(kMacroRuns), bound);
}

TEST(RandomRestart, ObserverSeesBestSoFar) {
  const auto space = default_cnn_space();
  HashedLandscape land(space, 6);
  Rng rng(3);
  std::vector<double> seen;
  random_restart_hc(space, 8, land, HcStrategy::kFirstImprovement,
                    default_hc_budget(space), rng,
                    [&](std::size_t, const HcResult& local,
                        const EvaluatedChromosome& best) {
                      EXPECT_GE(best.fitness, local.best.fitness);
                      seen.push_back(best.fitness);
                    });
  ASSERT_EQ(seen.size(), 8u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}

TEST(HcStrategy, ParseRoundTrip) {
  for (auto s : kStrategies) EXPECT_EQ(parse_hc_strategy(to_string(s)), s);
  EXPECT_THROW(parse_hc_strategy("annealing"), ConfigError);
  EXPECT_EQ(default_hc_budget(default_cnn_space()).max_evaluations, 42u);
}

}  // namespace
}  // namespace memetic

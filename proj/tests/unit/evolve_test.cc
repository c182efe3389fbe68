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

#include "memetic/evolve.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "memetic/errors.h"
#include "memetic/landscapes.h"
#include "memetic/rng.h"
#include "support.h"

namespace memetic {
namespace {

using testing::chrom;
using testing::space_of;

std::vector<EvaluatedChromosome> members_with(const std::vector<double>& f) {
  std::vector<EvaluatedChromosome> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.push_back({chrom({Allele(i)}), f[i]});
  }
  return out;
}

std::vector<double> fitnesses(const Population& p) {
  std::vector<double> out;
  for (const auto& m : p.members()) out.push_back(m.fitness);
  return out;
}

TEST(Population, SortedByFitnessThenChromosome) {
  Population p({{chrom({2}), 0.5}, {chrom({0}), 0.5}, {chrom({1}), 0.9}}, 3);
  EXPECT_EQ(p[0].chromosome, chrom({1}));
  EXPECT_EQ(p[1].chromosome, chrom({0}));
  EXPECT_EQ(p[2].chromosome, chrom({2}));
  EXPECT_THROW(Population(members_with({0.1, 0.2}), 3), ContractError);
}

TEST(GeneratePopulation, SizeAndReproducibility) {
  const auto space = default_cnn_space();
  Rng a(17), b(17);
  const auto pa = generate_population(space, 5, a);
  EXPECT_EQ(pa.size(), 5u);
  EXPECT_EQ(pa, generate_population(space, 5, b));
}

TEST(GeneratePopulation, SingletonSpaceAndMinimumSize) {
  SearchSpace one({{"x", GeneKind::kCategorical, {"only"}}});
  Rng rng(0);
  const auto p = generate_population(one, 2, rng);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], p[1]);
  EXPECT_THROW(generate_population(one, 1, rng), ConfigError);
}

TEST(SelectParents, TakesTopTwo) {
  Population p(members_with({0.393, 0.466, 0.459, 0.10, 0.20}), 5);
  const auto [a, b] = select_parents(p);
  EXPECT_EQ(a.fitness, 0.466);
  EXPECT_EQ(b.fitness, 0.459);
}

TEST(SelectParents, PopulationOfTwoAndTies) {
  Population two(members_with({0.1, 0.7}), 2);
  const auto [a, b] = select_parents(two);
  EXPECT_EQ(a.fitness, 0.7);
  EXPECT_EQ(b.fitness, 0.1);

  Population flat(members_with({0.5, 0.5, 0.5, 0.5}), 4);
  const auto [x, y] = select_parents(flat);
  EXPECT_EQ(x.chromosome, chrom({0}));
  EXPECT_EQ(y.chromosome, chrom({1}));
}

TEST(Crossover, OnePointWithFixedCut) {
  const auto [c1, c2] =
      one_point_crossover(chrom({0, 0, 0, 0}), chrom({1, 1, 1, 1}), 2);
  EXPECT_EQ(c1, chrom({0, 0, 1, 1}));
  EXPECT_EQ(c2, chrom({1, 1, 0, 0}));
  EXPECT_THROW(one_point_crossover(chrom({0, 0}), chrom({1, 1}), 2), ContractError);
}

TEST(Crossover, IdenticalParentsGiveIdenticalChildren) {
  Rng rng(3);
  const auto p = chrom({2, 0, 1, 3});
  for (auto mode : {CrossoverMode::kOnePoint, CrossoverMode::kUniform}) {
    const auto [c1, c2] = crossover(p, p, mode, rng);
    EXPECT_EQ(c1, p);
    EXPECT_EQ(c2, p);
  }
}

TEST(Crossover, ErrorsOnMismatchAndSingleGeneOnePoint) {
  Rng rng(0);
  EXPECT_THROW(crossover(chrom({0}), chrom({0, 1}), CrossoverMode::kUniform, rng),
               ContractError);
  EXPECT_THROW(crossover(chrom({0}), chrom({1}), CrossoverMode::kOnePoint, rng),
               ConfigError);
}

TEST(Crossover, OnePointCutIsUniformOverInteriorPoints) {
  Rng rng(21);
  const std::size_t genes = 5;
  const Chromosome zeros{std::vector<Allele>(genes, 0)};
  const Chromosome ones{std::vector<Allele>(genes, 1)};
  std::map<std::size_t, int> cuts;
  constexpr int kTrials = 40000;
  for (int i = 0; i < kTrials; ++i) {
    const auto [c1, c2] = crossover(zeros, ones, CrossoverMode::kOnePoint, rng);
    const auto cut = static_cast<std::size_t>(
        std::find(c1.alleles.begin(), c1.alleles.end(), 1u) - c1.alleles.begin());
    ++cuts[cut];
  }
  ASSERT_EQ(cuts.size(), genes - 1);
  for (const auto& [cut, count] : cuts) {
    EXPECT_GE(cut, 1u);
    EXPECT_LT(cut, genes);
    EXPECT_NEAR(count / double(kTrials), 1.0 / (genes - 1), 0.01);
  }
}

// Property: per-gene multiset conservation in both modes.
TEST(Crossover, PropertyGeneConservation) {
  Rng gen(404);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<std::size_t> sizes(2 + gen.uniform_index(8));
    for (auto& s : sizes) s = 1 + gen.uniform_index(6);
    const auto space = space_of(sizes);
    const auto p1 = random_chromosome(space, gen);
    const auto p2 = random_chromosome(space, gen);
    const auto mode = gen.fair_bit() ? CrossoverMode::kUniform : CrossoverMode::kOnePoint;
    const auto [c1, c2] = crossover(p1, p2, mode, gen);
    for (std::size_t g = 0; g < sizes.size(); ++g) {
      std::multiset<Allele> parents{p1[g], p2[g]};
      std::multiset<Allele> children{c1[g], c2[g]};
      ASSERT_EQ(parents, children);
    }
  }
}

TEST(Crossover, UniformInheritanceFrequency) {
  Rng rng(5);
  const Chromosome p1{std::vector<Allele>(10, 0)};
  const Chromosome p2{std::vector<Allele>(10, 1)};
  std::vector<int> from_p1(10, 0);
  constexpr int kTrials = 100000;
  for (int i = 0; i < kTrials; ++i) {
    const auto [c1, c2] = crossover(p1, p2, CrossoverMode::kUniform, rng);
    for (int g = 0; g < 10; ++g) from_p1[g] += c1[g] == 0;
  }
  for (int count : from_p1) EXPECT_NEAR(count / double(kTrials), 0.5, 0.01);
}

TEST(Mutation, RateZeroAndOne) {
  const auto space = default_cnn_space();
  Rng rng(6);
  const auto c = random_chromosome(space, rng);
  EXPECT_EQ(random_reset_mutation(space, c, 0.0, rng), c);

  double expected = 0;
  for (const auto& g : space.genes()) expected += 1.0 - 1.0 / double(g.size());
  double total = 0;
  constexpr int kTrials = 10000;
  for (int i = 0; i < kTrials; ++i) {
    const auto m = random_reset_mutation(space, c, 1.0, rng);
    ASSERT_TRUE(is_valid_for(space, m));
    total += double(hamming_distance(c, m));
  }
  EXPECT_NEAR(total / kTrials, expected, 0.02 * expected);
}

TEST(ReplaceWorst, WorkedExample) {
  Population p(members_with({0.470, 0.466, 0.459, 0.20, 0.10}), 5);
  const auto next = replace_worst(
      p, {{chrom({10}), 0.48}, {chrom({11}), 0.15}});
  EXPECT_EQ(fitnesses(next),
            (std::vector<double>{0.480, 0.470, 0.466, 0.459, 0.150}));
}

TEST(ReplaceWorst, WorseChildrenKeepBest) {
  Population p(members_with({0.9, 0.8, 0.7}), 3);
  const auto next = replace_worst(p, {{chrom({7}), 0.1}, {chrom({8}), 0.2}});
  EXPECT_EQ(next.best().fitness, 0.9);
  EXPECT_EQ(next.size(), 3u);
}

TEST(ReplaceWorst, TiesRemoveTieBreakLast) {
  Population p(members_with({0.5, 0.5, 0.5, 0.5}), 4);
  const auto next = replace_worst(p, {{chrom({8}), 0.5}, {chrom({9}), 0.5}});
  std::vector<Chromosome> kept;
  for (const auto& m : next.members()) kept.push_back(m.chromosome);
  EXPECT_EQ(kept, (std::vector<Chromosome>{chrom({0}), chrom({1}), chrom({8}),
                                           chrom({9})}));
}

TEST(ReplaceWorst, Guards) {
  Population small(members_with({0.5, 0.4}), 2);
  EXPECT_THROW(replace_worst(small, {{chrom({8}), 0.5}, {chrom({9}), 0.5}}),
               ConfigError);
  Population p(members_with({0.5, 0.4, 0.3}), 3);
  EXPECT_THROW(replace_worst(p, {{chrom({8}), 0.5}}), ContractError);
}

// Property: elitism and size preservation on random populations.
TEST(ReplaceWorst, PropertyElitism) {
  Rng gen(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 3 + gen.uniform_index(8);
    std::vector<EvaluatedChromosome> members;
    for (std::size_t i = 0; i < n; ++i) {
      members.push_back({chrom({Allele(gen.uniform_index(50))}), gen.uniform01()});
    }
    Population p(members, n);
    const auto next = replace_worst(
        p, {{chrom({Allele(gen.uniform_index(50))}), gen.uniform01()},
            {chrom({Allele(gen.uniform_index(50))}), gen.uniform01()}});
    ASSERT_EQ(next.size(), n);
    ASSERT_GE(next.best().fitness, p.best().fitness);
    ASSERT_TRUE(std::is_sorted(next.members().begin(), next.members().end(),
                               ranks_before));
  }
}

}  // namespace
}  // namespace memetic

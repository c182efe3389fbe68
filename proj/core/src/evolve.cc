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

#include <algorithm>

#include "memetic/errors.h"

namespace memetic {

bool ranks_before(const EvaluatedChromosome& a, const EvaluatedChromosome& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  return a.chromosome < b.chromosome;
}

Population::Population(std::vector<EvaluatedChromosome> members,
                       std::size_t capacity)
    : members_(std::move(members)), capacity_(capacity) {
  if (capacity_ == 0 || members_.size() != capacity_) {
    throw ContractError("population holds " + std::to_string(members_.size()) +
                        " members, capacity is " + std::to_string(capacity_));
  }
  std::stable_sort(members_.begin(), members_.end(), ranks_before);
}

const char* to_string(CrossoverMode mode) {
  return mode == CrossoverMode::kOnePoint ? "one_point" : "uniform";
}

CrossoverMode parse_crossover_mode(std::string_view name) {
  if (name == "one_point") return CrossoverMode::kOnePoint;
  if (name == "uniform") return CrossoverMode::kUniform;
  throw ConfigError("unknown crossover mode '" + std::string(name) +
                    "' (expected one_point or uniform)");
}

std::vector<Chromosome> generate_population(const SearchSpace& space,
                                            std::size_t n, Rng& rng) {
  if (n < 2) {
    throw ConfigError("population size must be at least 2, got " +
                      std::to_string(n));
  }
  std::vector<Chromosome> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_chromosome(space, rng));
  return out;
}

std::pair<EvaluatedChromosome, EvaluatedChromosome> select_parents(
    const Population& pop) {
  if (pop.size() < 2) throw ContractError("selection needs two members");
  return {pop[0], pop[1]};
}

ChildPair one_point_crossover(const Chromosome& p1, const Chromosome& p2,
                              std::size_t cut) {
  if (p1.size() != p2.size()) {
    throw ContractError("crossover parents have different lengths");
  }
  if (cut < 1 || cut >= p1.size()) {
    throw ContractError("crossover cut " + std::to_string(cut) +
                        " outside [1, " + std::to_string(p1.size()) + ")");
  }
  ChildPair children{p1, p2};
  for (std::size_t g = cut; g < p1.size(); ++g) {
    children.first.alleles[g] = p2[g];
    children.second.alleles[g] = p1[g];
  }
  return children;
}

ChildPair crossover(const Chromosome& p1, const Chromosome& p2,
                    CrossoverMode mode, Rng& rng) {
  if (p1.size() != p2.size()) {
    throw ContractError("crossover parents have different lengths");
  }
  const std::size_t genes = p1.size();
  if (mode == CrossoverMode::kOnePoint) {
    if (genes < 2) {
      throw ConfigError("one-point crossover needs at least 2 genes");
    }
    const auto cut = 1 + static_cast<std::size_t>(rng.uniform_index(genes - 1));
    return one_point_crossover(p1, p2, cut);
  }
  ChildPair children{p1, p2};
  for (std::size_t g = 0; g < genes; ++g) {
    if (rng.fair_bit()) {
      children.first.alleles[g] = p2[g];
      children.second.alleles[g] = p1[g];
    }
  }
  return children;
}

Chromosome random_reset_mutation(const SearchSpace& space, const Chromosome& c,
                                 double rate, Rng& rng) {
  require_valid_for(space, c);
  Chromosome out = c;
  for (std::size_t g = 0; g < out.size(); ++g) {
    if (rng.uniform01() < rate) {
      out.alleles[g] = static_cast<Allele>(rng.uniform_index(space.gene(g).size()));
    }
  }
  return out;
}

Population replace_worst(const Population& pop,
                         std::vector<EvaluatedChromosome> children) {
  if (pop.capacity() < 3) {
    throw ConfigError("replace_worst needs capacity >= 3, got " +
                      std::to_string(pop.capacity()));
  }
  if (children.size() != 2) {
    throw ContractError("replace_worst expects exactly 2 children");
  }
  std::vector<EvaluatedChromosome> next(pop.members().begin(),
                                        pop.members().end() - 2);
  for (auto& c : children) next.push_back(std::move(c));
  return Population(std::move(next), pop.capacity());
}

}  // namespace memetic

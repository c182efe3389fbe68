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

#ifndef MEMETIC_EVOLVE_H_
#define MEMETIC_EVOLVE_H_

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "memetic/rng.h"
#include "memetic/space.h"

namespace memetic {

// Population order: fitness descending, then chromosome ascending.
bool ranks_before(const EvaluatedChromosome& a, const EvaluatedChromosome& b);

// Fixed-capacity multiset of evaluated chromosomes, always held in
// ranks_before() order. Duplicates are allowed.
class Population {
 public:
  // Throws ContractError unless members.size() == capacity.
  Population(std::vector<EvaluatedChromosome> members, std::size_t capacity);

  const std::vector<EvaluatedChromosome>& members() const { return members_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return members_.size(); }
  const EvaluatedChromosome& best() const { return members_.front(); }
  const EvaluatedChromosome& operator[](std::size_t i) const {
    return members_[i];
  }

 private:
  std::vector<EvaluatedChromosome> members_;
  std::size_t capacity_;
};

enum class CrossoverMode { kOnePoint, kUniform };

const char* to_string(CrossoverMode mode);
// "one_point" / "uniform"; throws ConfigError otherwise.
CrossoverMode parse_crossover_mode(std::string_view name);

// n sequential random_chromosome() draws. Throws ConfigError if n < 2.
std::vector<Chromosome> generate_population(const SearchSpace& space,
                                            std::size_t n, Rng& rng);

// The two best members, in population order.
std::pair<EvaluatedChromosome, EvaluatedChromosome> select_parents(
    const Population& pop);

using ChildPair = std::pair<Chromosome, Chromosome>;

// child1 = p1[0, cut) ++ p2[cut, G), child2 the mirror. cut in [1, G-1].
ChildPair one_point_crossover(const Chromosome& p1, const Chromosome& p2,
                              std::size_t cut);

// One-point draws cut = 1 + uniform_index(G - 1). Uniform draws one fair bit
// per gene: on 0 child1 takes p1's allele and child2 p2's, on 1 the reverse.
// Throws ContractError on length mismatch and ConfigError for one-point over
// a single gene.
ChildPair crossover(const Chromosome& p1, const Chromosome& p2,
                    CrossoverMode mode, Rng& rng);

// Pure-GA mutation: for each gene in order, draw uniform01(); below `rate`
// the allele is redrawn uniformly over the whole domain (it may land on the
// same value).
Chromosome random_reset_mutation(const SearchSpace& space, const Chromosome& c,
                                 double rate, Rng& rng);

// Drops the two last-ranked members and inserts the children. Throws
// ConfigError if capacity < 3, ContractError unless exactly two children.
Population replace_worst(const Population& pop,
                         std::vector<EvaluatedChromosome> children);

}  // namespace memetic

#endif  // MEMETIC_EVOLVE_H_

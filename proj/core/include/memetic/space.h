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

#ifndef MEMETIC_SPACE_H_
#define MEMETIC_SPACE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "memetic/rng.h"

namespace memetic {

enum class GeneKind { kCategorical, kOrdinal };

const char* to_string(GeneKind kind);

// One hyperparameter dimension. Domain tokens are kept verbatim ("0.3",
// "relu") and are what crosses serialization boundaries.
struct GeneSpec {
  std::string name;
  GeneKind kind = GeneKind::kCategorical;
  std::vector<std::string> domain;

  std::size_t size() const { return domain.size(); }
};

// Ordered list of genes. Construction does not validate; call
// validate_space() (or require_valid_space()) at the boundary where a space
// enters the system.
class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::vector<GeneSpec> genes) : genes_(std::move(genes)) {}

  const std::vector<GeneSpec>& genes() const { return genes_; }
  const GeneSpec& gene(std::size_t i) const { return genes_[i]; }
  std::size_t gene_count() const { return genes_.size(); }

  // Product of domain sizes, or nullopt on 64-bit overflow.
  std::optional<std::uint64_t> cardinality() const;

  // Sum over genes of (domain size - 1).
  std::size_t neighborhood_size() const;

  std::optional<std::size_t> index_of(std::string_view gene_name) const;

  friend bool operator==(const SearchSpace&, const SearchSpace&);

 private:
  std::vector<GeneSpec> genes_;
};

bool operator==(const GeneSpec& a, const GeneSpec& b);

// Every invariant violation, one message per problem, e.g.
// "empty domain: a1", "duplicate gene name: f1",
// "duplicate token in d1: 0.3". Empty result means valid.
std::vector<std::string> validate_space(const SearchSpace& space);

// Throws ConfigError joining all validate_space() messages.
void require_valid_space(const SearchSpace& space);

using Allele = std::uint32_t;

// A point in a search space: one domain index per gene. Ordering is
// lexicographic on the indices and serves as the global tie-break.
struct Chromosome {
  std::vector<Allele> alleles;

  std::size_t size() const { return alleles.size(); }
  Allele operator[](std::size_t i) const { return alleles[i]; }

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
  friend std::strong_ordering operator<=>(const Chromosome& a,
                                          const Chromosome& b) {
    return a.alleles <=> b.alleles;
  }
};

struct ChromosomeHash {
  std::size_t operator()(const Chromosome& c) const noexcept;
};

struct EvaluatedChromosome {
  Chromosome chromosome;
  double fitness = 0.0;

  friend bool operator==(const EvaluatedChromosome&,
                         const EvaluatedChromosome&) = default;
};

bool is_valid_for(const SearchSpace& space, const Chromosome& c);

// Throws ContractError if c does not fit space.
void require_valid_for(const SearchSpace& space, const Chromosome& c);

std::size_t hamming_distance(const Chromosome& a, const Chromosome& b);

// Draws one allele per gene, in gene order, each uniform over its domain.
Chromosome random_chromosome(const SearchSpace& space, Rng& rng);

// All chromosomes that differ from c in exactly one allele. Gene-major,
// then ascending domain index.
std::vector<Chromosome> neighbors(const SearchSpace& space, const Chromosome& c);

// Visits every chromosome in lexicographic order (last gene fastest).
void for_each_chromosome(const SearchSpace& space,
                         const std::function<void(const Chromosome&)>& visit);

// (gene name, token) pairs in gene order.
std::vector<std::pair<std::string, std::string>> tokens_of(
    const SearchSpace& space, const Chromosome& c);

}  // namespace memetic

#endif  // MEMETIC_SPACE_H_

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

#include "memetic/space.h"

#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

#include "memetic/errors.h"

namespace memetic {

const char* to_string(GeneKind kind) {
  return kind == GeneKind::kOrdinal ? "ordinal" : "categorical";
}

bool operator==(const GeneSpec& a, const GeneSpec& b) {
  return a.name == b.name && a.kind == b.kind && a.domain == b.domain;
}

bool operator==(const SearchSpace& a, const SearchSpace& b) {
  return a.genes_ == b.genes_;
}

std::optional<std::uint64_t> SearchSpace::cardinality() const {
  std::uint64_t total = 1;
  for (const auto& g : genes_) {
    const std::uint64_t n = g.size();
    if (n == 0) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / n) {
      return std::nullopt;
    }
    total *= n;
  }
  return total;
}

std::size_t SearchSpace::neighborhood_size() const {
  std::size_t total = 0;
  for (const auto& g : genes_) {
    if (!g.domain.empty()) total += g.size() - 1;
  }
  return total;
}

std::optional<std::size_t> SearchSpace::index_of(
    std::string_view gene_name) const {
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    if (genes_[i].name == gene_name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> validate_space(const SearchSpace& space) {
  std::vector<std::string> errors;
  if (space.gene_count() == 0) errors.emplace_back("space has no genes");

  std::set<std::string> seen_names;
  std::set<std::string> reported_dups;
  for (const auto& g : space.genes()) {
    if (g.name.empty()) errors.emplace_back("gene with empty name");
    if (!seen_names.insert(g.name).second &&
        reported_dups.insert(g.name).second) {
      errors.push_back("duplicate gene name: " + g.name);
    }
    if (g.domain.empty()) {
      errors.push_back("empty domain: " + g.name);
      continue;
    }
    std::set<std::string> tokens;
    for (const auto& t : g.domain) {
      if (!tokens.insert(t).second) {
        errors.push_back("duplicate token in " + g.name + ": " + t);
      }
    }
  }
  if (errors.empty() && !space.cardinality()) {
    errors.emplace_back("space cardinality overflows 64 bits");
  }
  return errors;
}

void require_valid_space(const SearchSpace& space) {
  const auto errors = validate_space(space);
  if (errors.empty()) return;
  std::ostringstream os;
  os << "invalid search space: ";
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) os << "; ";
    os << errors[i];
  }
  throw ConfigError(os.str());
}

std::size_t ChromosomeHash::operator()(const Chromosome& c) const noexcept {
  // FNV-1a over the index words.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Allele a : c.alleles) {
    h ^= a;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

bool is_valid_for(const SearchSpace& space, const Chromosome& c) {
  if (c.size() != space.gene_count()) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= space.gene(i).size()) return false;
  }
  return true;
}

void require_valid_for(const SearchSpace& space, const Chromosome& c) {
  if (c.size() != space.gene_count()) {
    throw ContractError("chromosome has " + std::to_string(c.size()) +
                        " alleles, space has " +
                        std::to_string(space.gene_count()) + " genes");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= space.gene(i).size()) {
      throw ContractError("allele " + std::to_string(c[i]) +
                          " out of range for gene " + space.gene(i).name);
    }
  }
}

std::size_t hamming_distance(const Chromosome& a, const Chromosome& b) {
  if (a.size() != b.size()) {
    throw ContractError("hamming_distance: length mismatch");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

Chromosome random_chromosome(const SearchSpace& space, Rng& rng) {
  Chromosome c;
  c.alleles.reserve(space.gene_count());
  for (const auto& g : space.genes()) {
    c.alleles.push_back(static_cast<Allele>(rng.uniform_index(g.size())));
  }
  return c;
}

std::vector<Chromosome> neighbors(const SearchSpace& space,
                                  const Chromosome& c) {
  require_valid_for(space, c);
  std::vector<Chromosome> out;
  out.reserve(space.neighborhood_size());
  for (std::size_t g = 0; g < space.gene_count(); ++g) {
    const auto n = static_cast<Allele>(space.gene(g).size());
    for (Allele v = 0; v < n; ++v) {
      if (v == c[g]) continue;
      Chromosome next = c;
      next.alleles[g] = v;
      out.push_back(std::move(next));
    }
  }
  return out;
}

void for_each_chromosome(const SearchSpace& space,
                         const std::function<void(const Chromosome&)>& visit) {
  const std::size_t n = space.gene_count();
  if (n == 0) return;
  for (const auto& g : space.genes()) {
    if (g.domain.empty()) return;
  }
  Chromosome c{std::vector<Allele>(n, 0)};
  for (;;) {
    visit(c);
    std::size_t g = n;
    while (g > 0) {
      --g;
      if (++c.alleles[g] < space.gene(g).size()) break;
      c.alleles[g] = 0;
      if (g == 0) return;
    }
  }
}

std::vector<std::pair<std::string, std::string>> tokens_of(
    const SearchSpace& space, const Chromosome& c) {
  require_valid_for(space, c);
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.emplace_back(space.gene(i).name, space.gene(i).domain[c[i]]);
  }
  return out;
}

}  // namespace memetic

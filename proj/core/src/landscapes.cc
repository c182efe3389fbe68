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

#include "memetic/landscapes.h"

#include <algorithm>
#include <cmath>

#include "memetic/errors.h"

namespace memetic {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

GeneSpec gene(std::string name, GeneKind kind, std::vector<std::string> values) {
  return GeneSpec{std::move(name), kind, std::move(values)};
}

}  // namespace

SearchSpace default_cnn_space() {
  const auto O = GeneKind::kOrdinal;
  const auto C = GeneKind::kCategorical;
  return SearchSpace({
      gene("f1", O, {"32", "64", "128"}),
      gene("f2", O, {"64", "128", "256"}),
      gene("k", O, {"3", "5"}),
      gene("a1", C, {"relu", "elu", "tanh"}),
      gene("a2", C, {"relu", "elu", "tanh"}),
      gene("d1", O, {"0.2", "0.3", "0.4", "0.5"}),
      gene("d2", O, {"0.2", "0.3", "0.4", "0.5"}),
      gene("f3", O, {"256", "512", "1024"}),
      gene("optimizer", C, {"sgd", "adam", "rmsprop"}),
      gene("epochs", O, {"10", "20", "30"}),
  });
}

// --- SeparableLandscape ---------------------------------------------------

SeparableLandscape::SeparableLandscape(SearchSpace space,
                                       std::vector<std::vector<double>> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  require_valid_space(space_);
  if (weights_.size() != space_.gene_count()) {
    throw ConfigError("separable landscape: expected " +
                      std::to_string(space_.gene_count()) +
                      " weight rows, got " + std::to_string(weights_.size()));
  }
  for (std::size_t g = 0; g < weights_.size(); ++g) {
    auto& w = weights_[g];
    const auto& name = space_.gene(g).name;
    if (w.size() != space_.gene(g).size()) {
      throw ConfigError("separable landscape: gene " + name + " needs " +
                        std::to_string(space_.gene(g).size()) + " weights");
    }
    for (double x : w) {
      if (!std::isfinite(x) || x < 0.0) {
        throw ConfigError("separable landscape: negative or non-finite "
                          "weight for gene " + name);
      }
    }
    const double top = *std::max_element(w.begin(), w.end());
    const auto ties = std::count(w.begin(), w.end(), top);
    if (ties > 1) {
      auto first = std::find(w.begin(), w.end(), top);
      *first = top + std::max(1e-9, top * 1e-9);
    }
  }
  for (const auto& w : weights_) {
    normalizer_ += *std::max_element(w.begin(), w.end());
  }
}

SeparableLandscape SeparableLandscape::from_seed(SearchSpace space,
                                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> weights;
  for (const auto& g : space.genes()) {
    auto& row = weights.emplace_back();
    for (std::size_t v = 0; v < g.size(); ++v) row.push_back(rng.uniform01());
  }
  return SeparableLandscape(std::move(space), std::move(weights));
}

double SeparableLandscape::evaluate(const Chromosome& c) {
  require_valid_for(space_, c);
  if (normalizer_ == 0.0) return 1.0;
  double sum = 0.0;
  for (std::size_t g = 0; g < c.size(); ++g) sum += weights_[g][c[g]];
  return std::min(1.0, sum / normalizer_);
}

Chromosome SeparableLandscape::optimum() const {
  Chromosome c;
  for (const auto& w : weights_) {
    c.alleles.push_back(static_cast<Allele>(
        std::max_element(w.begin(), w.end()) - w.begin()));
  }
  return c;
}

// --- TrapLandscape --------------------------------------------------------

TrapLandscape::TrapLandscape(SearchSpace space, Chromosome target,
                             Chromosome trap, Params params)
    : space_(std::move(space)),
      target_(std::move(target)),
      trap_(std::move(trap)),
      params_(params) {
  require_valid_space(space_);
  if (!is_valid_for(space_, target_)) {
    throw ConfigError("trap landscape: target does not fit the space");
  }
  if (!is_valid_for(space_, trap_)) {
    throw ConfigError("trap landscape: trap does not fit the space");
  }
  if (target_ == trap_) {
    throw ConfigError("trap landscape: target and trap must differ");
  }
  if (!(params_.trap_value > 0.0 && params_.trap_value < 1.0)) {
    throw ConfigError("trap landscape: trap_value must be in (0, 1)");
  }
  if (!(params_.slope > 0.0 && params_.slope <= 1.0)) {
    throw ConfigError("trap landscape: slope must be in (0, 1]");
  }
}

TrapLandscape TrapLandscape::with_defaults(SearchSpace space, Params params) {
  Chromosome trap{std::vector<Allele>(space.gene_count(), 0)};
  Chromosome target;
  for (const auto& g : space.genes()) {
    target.alleles.push_back(
        static_cast<Allele>(g.domain.empty() ? 0 : g.size() - 1));
  }
  return TrapLandscape(std::move(space), std::move(target), std::move(trap),
                       params);
}

double TrapLandscape::evaluate(const Chromosome& c) {
  require_valid_for(space_, c);
  if (c == target_) return 1.0;
  const double g = static_cast<double>(space_.gene_count());
  const double d = static_cast<double>(hamming_distance(c, trap_));
  return params_.trap_value * (1.0 - params_.slope * d / g);
}

// --- HashedLandscape ------------------------------------------------------

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double HashedLandscape::fitness_of(std::uint64_t seed, const Chromosome& c) {
  std::uint64_t h = splitmix64_mix(seed + kGolden);
  for (Allele a : c.alleles) h = splitmix64_mix(h + kGolden + a);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double HashedLandscape::evaluate(const Chromosome& c) {
  require_valid_for(space_, c);
  return fitness_of(seed_, c);
}

// --- brute force ----------------------------------------------------------

EvaluatedChromosome brute_force_optimum(const SearchSpace& space,
                                        FitnessEvaluator& evaluator,
                                        std::uint64_t limit) {
  require_valid_space(space);
  const auto card = space.cardinality();
  if (!card || *card > limit) {
    throw ConfigError("brute force refused: cardinality exceeds limit of " +
                      std::to_string(limit));
  }
  EvaluatedChromosome best;
  bool first = true;
  for_each_chromosome(space, [&](const Chromosome& c) {
    const double f = checked_fitness(evaluator.evaluate(c));
    if (first || f > best.fitness) {
      best = {c, f};
      first = false;
    }
  });
  return best;
}

}  // namespace memetic

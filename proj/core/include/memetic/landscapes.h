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

#ifndef MEMETIC_LANDSCAPES_H_
#define MEMETIC_LANDSCAPES_H_

#include <cstdint>
#include <vector>

#include "memetic/evaluator.h"
#include "memetic/space.h"

namespace memetic {

// Ten-gene CNN hyperparameter space:
//   f1 {32,64,128}, f2 {64,128,256}, k {3,5}, a1/a2 {relu,elu,tanh},
//   d1/d2 {0.2,0.3,0.4,0.5}, f3 {256,512,1024}, optimizer {sgd,adam,rmsprop},
//   epochs {10,20,30}.
// Cardinality 69,984; every chromosome has 21 single-gene neighbors.
SearchSpace default_cnn_space();

// fitness(c) = sum_g w_g[c_g] / sum_g max(w_g).
//
// Each gene's maximum weight is made unique at construction: when several
// values tie for the maximum, the lowest-index one is nudged upward, so the
// landscape has exactly one optimum and single-gene moves reach it from
// anywhere.
class SeparableLandscape final : public FitnessEvaluator {
 public:
  SeparableLandscape(SearchSpace space, std::vector<std::vector<double>> weights);

  // Weights drawn uniform in [0, 1) from Rng(seed), gene-major order.
  static SeparableLandscape from_seed(SearchSpace space, std::uint64_t seed);

  double evaluate(const Chromosome& c) override;
  bool deterministic() const override { return true; }

  const std::vector<std::vector<double>>& weights() const { return weights_; }
  // argmax of each gene's weights.
  Chromosome optimum() const;

 private:
  SearchSpace space_;
  std::vector<std::vector<double>> weights_;
  double normalizer_ = 0.0;
};

struct TrapParams {
  double trap_value = 0.8;
  double slope = 0.5;
};

// Deceptive landscape. The target scores 1.0; every other chromosome scores
//   trap_value * (1 - slope * hamming(c, trap) / G)
// so single-gene moves lead toward the trap unless the target is one move
// away.
class TrapLandscape final : public FitnessEvaluator {
 public:
  using Params = TrapParams;

  TrapLandscape(SearchSpace space, Chromosome target, Chromosome trap,
                Params params);
  TrapLandscape(SearchSpace space, Chromosome target, Chromosome trap)
      : TrapLandscape(std::move(space), std::move(target), std::move(trap),
                      Params{}) {}

  // Trap at all-zero indices, target at every gene's last index.
  static TrapLandscape with_defaults(SearchSpace space, Params params = {});

  double evaluate(const Chromosome& c) override;
  bool deterministic() const override { return true; }

  const Chromosome& target() const { return target_; }
  const Chromosome& trap() const { return trap_; }
  double trap_value() const { return params_.trap_value; }

 private:
  SearchSpace space_;
  Chromosome target_;
  Chromosome trap_;
  Params params_;
};

// SplitMix64 output finalizer (Steele, Lea & Flood; constants from Vigna's
// reference splitmix64.c).
std::uint64_t splitmix64_mix(std::uint64_t z);

// Unstructured landscape keyed by a 64-bit seed:
//   h = mix(seed + 0x9e3779b97f4a7c15)
//   for each allele a in gene order: h = mix(h + 0x9e3779b97f4a7c15 + a)
//   fitness = (h >> 11) * 2^-53
// where mix is splitmix64_mix and additions wrap mod 2^64. The result is
// h / 2^64 truncated to double precision, always in [0, 1).
class HashedLandscape final : public FitnessEvaluator {
 public:
  HashedLandscape(SearchSpace space, std::uint64_t seed)
      : space_(std::move(space)), seed_(seed) {}

  static double fitness_of(std::uint64_t seed, const Chromosome& c);

  double evaluate(const Chromosome& c) override;
  bool deterministic() const override { return true; }
  std::uint64_t seed() const { return seed_; }

 private:
  SearchSpace space_;
  std::uint64_t seed_;
};

inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

// Exhaustive maximum; ties go to the lexicographically smallest chromosome.
// Throws ConfigError when the space has more than `limit` points.
EvaluatedChromosome brute_force_optimum(const SearchSpace& space,
                                        FitnessEvaluator& evaluator,
                                        std::uint64_t limit = kBruteForceLimit);

}  // namespace memetic

#endif  // MEMETIC_LANDSCAPES_H_

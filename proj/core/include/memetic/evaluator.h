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

#ifndef MEMETIC_EVALUATOR_H_
#define MEMETIC_EVALUATOR_H_

#include <cstdint>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "memetic/space.h"

namespace memetic {

// Maps a chromosome to a fitness in [0, 1]. Implementations throw
// EvaluationError for a failed evaluation and SessionError when they can
// no longer evaluate anything.
class FitnessEvaluator {
 public:
  virtual ~FitnessEvaluator() = default;

  virtual double evaluate(const Chromosome& c) = 0;

  // Results are returned in input order. The default evaluates one by one;
  // evaluators that can overlap work (pipelined external sessions) override.
  virtual std::vector<double> evaluate_many(std::span<const Chromosome> batch);

  // True if equal chromosomes always score equally.
  virtual bool deterministic() const = 0;
};

// Throws EvaluationError unless fitness is finite and within [0, 1].
// Out-of-range values are rejected rather than clamped.
double checked_fitness(double fitness);

// Memoizing wrapper. Safe for concurrent evaluate() calls; two threads that
// miss on the same chromosome at the same time may both call the inner
// evaluator, in which case the first stored value wins and both callers
// return it. Failures propagate and are not cached.
class CachedEvaluator final : public FitnessEvaluator {
 public:
  explicit CachedEvaluator(FitnessEvaluator& inner) : inner_(inner) {}

  double evaluate(const Chromosome& c) override;
  std::vector<double> evaluate_many(std::span<const Chromosome> batch) override;
  bool deterministic() const override { return inner_.deterministic(); }

  std::uint64_t hits() const;
  std::uint64_t misses() const;
  std::size_t size() const;
  bool contains(const Chromosome& c) const;

 private:
  FitnessEvaluator& inner_;
  mutable std::mutex mu_;
  std::unordered_map<Chromosome, double, ChromosomeHash> cache_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

}  // namespace memetic

#endif  // MEMETIC_EVALUATOR_H_

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

#include <cmath>
#include <sstream>

#include "memetic/errors.h"

namespace memetic {

std::vector<double> FitnessEvaluator::evaluate_many(
    std::span<const Chromosome> batch) {
  std::vector<double> out;
  out.reserve(batch.size());
  for (const auto& c : batch) out.push_back(evaluate(c));
  return out;
}

double checked_fitness(double fitness) {
  if (!std::isfinite(fitness) || fitness < 0.0 || fitness > 1.0) {
    std::ostringstream os;
    os.precision(17);
    os << "fitness out of [0,1]: " << fitness;
    throw EvaluationError(os.str());
  }
  return fitness;
}

double CachedEvaluator::evaluate(const Chromosome& c) {
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(c); it != cache_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
  }
  // Inner call runs unlocked so slow evaluations do not serialize lookups.
  const double fitness = checked_fitness(inner_.evaluate(c));
  std::lock_guard lock(mu_);
  return cache_.try_emplace(c, fitness).first->second;
}

std::vector<double> CachedEvaluator::evaluate_many(
    std::span<const Chromosome> batch) {
  std::vector<double> out(batch.size(), 0.0);
  std::vector<Chromosome> pending;
  std::vector<std::size_t> pending_slot;
  {
    std::lock_guard lock(mu_);
    std::unordered_map<Chromosome, std::size_t, ChromosomeHash> first_miss;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (auto it = cache_.find(batch[i]); it != cache_.end()) {
        ++hits_;
        out[i] = it->second;
      } else if (first_miss.contains(batch[i])) {
        // Repeat of a miss earlier in this batch: served from that result.
        ++hits_;
      } else {
        ++misses_;
        first_miss.emplace(batch[i], pending.size());
        pending.push_back(batch[i]);
      }
    }
  }
  if (pending.empty()) return out;

  const auto results = inner_.evaluate_many(pending);
  std::lock_guard lock(mu_);
  for (std::size_t k = 0; k < pending.size(); ++k) {
    cache_.try_emplace(pending[k], checked_fitness(results[k]));
  }
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (auto it = cache_.find(batch[i]); it != cache_.end()) {
      out[i] = it->second;
    }
  }
  return out;
}

std::uint64_t CachedEvaluator::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::uint64_t CachedEvaluator::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

std::size_t CachedEvaluator::size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

bool CachedEvaluator::contains(const Chromosome& c) const {
  std::lock_guard lock(mu_);
  return cache_.contains(c);
}

}  // namespace memetic

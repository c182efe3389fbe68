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

#ifndef MEMETIC_LOCALSEARCH_H_
#define MEMETIC_LOCALSEARCH_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <string_view>
#include <vector>

#include "memetic/evaluator.h"
#include "memetic/rng.h"
#include "memetic/space.h"

namespace memetic {

enum class HcStrategy { kFirstImprovement, kSteepestAscent };

const char* to_string(HcStrategy strategy);
HcStrategy parse_hc_strategy(std::string_view name);

// Cap on evaluator calls (cache hits included) for one hill climb.
struct HcBudget {
  std::uint64_t max_evaluations = std::numeric_limits<std::uint64_t>::max();

  static HcBudget unlimited() { return {}; }
};

// Default mutation-phase budget: two full neighborhood scans.
HcBudget default_hc_budget(const SearchSpace& space);

struct HcResult {
  EvaluatedChromosome best;
  std::uint64_t evaluations_used = 0;
  bool budget_exhausted = false;
  // Fitness of the start followed by every accepted move.
  std::vector<double> trajectory;
};

// Single-gene hill climbing with strict improvement.
//
// Steepest ascent scans all neighbors in neighbors() order and moves to the
// best strictly better one (earliest on ties). First improvement scans an
// rng-shuffled neighbor order and moves on the first strictly better one,
// restarting the scan there. Both stop at a local optimum or when the next
// evaluation would exceed the budget; a partial steepest scan still takes
// its best improvement.
HcResult hill_climb(const SearchSpace& space, const EvaluatedChromosome& start,
                    FitnessEvaluator& evaluate, HcStrategy strategy,
                    HcBudget budget, Rng& rng);

struct MutationResult {
  std::vector<EvaluatedChromosome> children;
  std::uint64_t evaluations_used = 0;
};

// hill_climb on each of exactly two children, in order, sharing rng.
MutationResult mutate_children(const SearchSpace& space,
                               const std::vector<EvaluatedChromosome>& children,
                               FitnessEvaluator& evaluate, HcStrategy strategy,
                               HcBudget budget, Rng& rng);

// Called after each restart with the restart index (0-based), that restart's
// climb, and the best result so far.
using RestartObserver = std::function<void(
    std::size_t, const HcResult&, const EvaluatedChromosome&)>;

struct RestartResult {
  EvaluatedChromosome best;
  std::uint64_t evaluations_used = 0;
};

// Best of `restarts` climbs, each from a fresh random_chromosome() whose
// evaluation counts toward that restart's evaluations (not its climb budget).
// `should_continue`, when set, is consulted before each restart after the
// first. `total_evaluations` caps evaluator calls across all restarts; a
// restart needs one call for its start and climbs with whatever is left.
RestartResult random_restart_hc(
    const SearchSpace& space, std::size_t restarts, FitnessEvaluator& evaluate,
    HcStrategy strategy, HcBudget per_start_budget, Rng& rng,
    const RestartObserver& observer = {},
    const std::function<bool()>& should_continue = {},
    std::uint64_t total_evaluations = std::numeric_limits<std::uint64_t>::max());

}  // namespace memetic

#endif  // MEMETIC_LOCALSEARCH_H_

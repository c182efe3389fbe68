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

#include "memetic/localsearch.h"

#include <algorithm>
#include <numeric>

#include "memetic/errors.h"
#include "memetic/evolve.h"

namespace memetic {

const char* to_string(HcStrategy strategy) {
  return strategy == HcStrategy::kSteepestAscent ? "steepest_ascent"
                                                 : "first_improvement";
}

HcStrategy parse_hc_strategy(std::string_view name) {
  if (name == "first_improvement") return HcStrategy::kFirstImprovement;
  if (name == "steepest_ascent") return HcStrategy::kSteepestAscent;
  throw ConfigError("unknown hill-climbing strategy '" + std::string(name) +
                    "' (expected first_improvement or steepest_ascent)");
}

HcBudget default_hc_budget(const SearchSpace& space) {
  return {std::max<std::uint64_t>(1, 2 * space.neighborhood_size())};
}

namespace {

class Climber {
 public:
  Climber(const SearchSpace& space, const EvaluatedChromosome& start,
          FitnessEvaluator& evaluate, HcBudget budget)
      : space_(space), evaluate_(evaluate), budget_(budget) {
    result_.best = start;
    result_.trajectory.push_back(start.fitness);
  }

  // False once the budget forbids another evaluation.
  bool try_evaluate(const Chromosome& c, double& fitness) {
    if (result_.evaluations_used >= budget_.max_evaluations) {
      result_.budget_exhausted = true;
      return false;
    }
    ++result_.evaluations_used;
    fitness = checked_fitness(evaluate_.evaluate(c));
    return true;
  }

  void accept(Chromosome c, double fitness) {
    result_.best = {std::move(c), fitness};
    result_.trajectory.push_back(fitness);
  }

  const SearchSpace& space() const { return space_; }
  HcResult& result() { return result_; }

 private:
  const SearchSpace& space_;
  FitnessEvaluator& evaluate_;
  HcBudget budget_;
  HcResult result_;
};

void steepest_ascent(Climber& climber) {
  for (;;) {
    const auto current = climber.result().best;
    const auto candidates = neighbors(climber.space(), current.chromosome);
    std::size_t best_index = candidates.size();
    double best_fitness = current.fitness;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      double f;
      if (!climber.try_evaluate(candidates[i], f)) break;
      if (f > best_fitness) {
        best_fitness = f;
        best_index = i;
      }
    }
    if (best_index == candidates.size()) return;
    climber.accept(candidates[best_index], best_fitness);
    if (climber.result().budget_exhausted) return;
  }
}

void first_improvement(Climber& climber, Rng& rng) {
  for (;;) {
    const auto current = climber.result().best;
    auto candidates = neighbors(climber.space(), current.chromosome);
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    bool moved = false;
    for (std::size_t i : order) {
      double f;
      if (!climber.try_evaluate(candidates[i], f)) return;
      if (f > current.fitness) {
        climber.accept(std::move(candidates[i]), f);
        moved = true;
        break;
      }
    }
    if (!moved) return;
  }
}

}  // namespace

HcResult hill_climb(const SearchSpace& space, const EvaluatedChromosome& start,
                    FitnessEvaluator& evaluate, HcStrategy strategy,
                    HcBudget budget, Rng& rng) {
  require_valid_for(space, start.chromosome);
  if (budget.max_evaluations < 1) {
    throw ConfigError("hill-climbing budget must be at least 1");
  }
  Climber climber(space, start, evaluate, budget);
  if (strategy == HcStrategy::kSteepestAscent) {
    steepest_ascent(climber);
  } else {
    first_improvement(climber, rng);
  }
  return std::move(climber.result());
}

MutationResult mutate_children(const SearchSpace& space,
                               const std::vector<EvaluatedChromosome>& children,
                               FitnessEvaluator& evaluate, HcStrategy strategy,
                               HcBudget budget, Rng& rng) {
  if (children.size() != 2) {
    throw ContractError("mutate_children expects exactly 2 children");
  }
  MutationResult out;
  for (const auto& child : children) {
    auto climbed = hill_climb(space, child, evaluate, strategy, budget, rng);
    out.evaluations_used += climbed.evaluations_used;
    out.children.push_back(std::move(climbed.best));
  }
  return out;
}

RestartResult random_restart_hc(const SearchSpace& space, std::size_t restarts,
                                FitnessEvaluator& evaluate, HcStrategy strategy,
                                HcBudget per_start_budget, Rng& rng,
                                const RestartObserver& observer,
                                const std::function<bool()>& should_continue,
                                std::uint64_t total_evaluations) {
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
  if (total_evaluations < 1) throw ConfigError("restart budget must be at least 1");
  RestartResult out;
  for (std::size_t r = 0; r < restarts; ++r) {
    if (r > 0) {
      if (out.evaluations_used >= total_evaluations) break;
      if (should_continue && !should_continue()) break;
    }
    auto start_chromosome = random_chromosome(space, rng);
    const double start_fitness =
        checked_fitness(evaluate.evaluate(start_chromosome));
    out.evaluations_used += 1;
    EvaluatedChromosome start{std::move(start_chromosome), start_fitness};

    const std::uint64_t left = total_evaluations - out.evaluations_used;
    HcResult climbed;
    if (left == 0) {
      climbed.best = start;
      climbed.trajectory.push_back(start.fitness);
      climbed.budget_exhausted = true;
    } else {
      const HcBudget budget{std::min(per_start_budget.max_evaluations, left)};
      climbed = hill_climb(space, start, evaluate, strategy, budget, rng);
    }
    out.evaluations_used += climbed.evaluations_used;
    if (r == 0 || ranks_before(climbed.best, out.best)) out.best = climbed.best;
    if (observer) observer(r, climbed, out.best);
  }
  return out;
}

}  // namespace memetic

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

#include "memetic/driver.h"

#include <algorithm>
#include <chrono>
#include <limits>

#include "memetic/errors.h"
#include "memetic/evolve.h"
#include "memetic/localsearch.h"

namespace memetic {

const char* to_string(Termination termination) {
  switch (termination) {
    case Termination::kThresholdReached: return "threshold_reached";
    case Termination::kEvaluationBudgetExhausted: return "evaluation_budget_exhausted";
    case Termination::kEvaluatorFailure: return "evaluator_failure";
    case Termination::kGenerationsExhausted: break;
  }
  return "generations_exhausted";
}

namespace {

constexpr auto kUnlimited = std::numeric_limits<std::uint64_t>::max();

class RunState {
 public:
  RunState(const RunConfig& config, FitnessEvaluator& inner,
           RunObserver* observer)
      : config_(config),
        cache_(inner),
        rng_(config.seed),
        observer_(observer),
        start_(std::chrono::steady_clock::now()) {
    result_.algorithm = config.algorithm;
    result_.seed = config.seed;
  }

  const RunConfig& config() const { return config_; }
  CachedEvaluator& cache() { return cache_; }
  Rng& rng() { return rng_; }

  // Distinct evaluations still allowed under max_evaluations.
  std::uint64_t remaining() const {
    if (config_.max_evaluations == 0) return kUnlimited;
    const auto used = cache_.misses();
    return used >= config_.max_evaluations ? 0 : config_.max_evaluations - used;
  }

  void set_best(const EvaluatedChromosome& best) { result_.best = best; }

  void record(std::size_t generation, std::vector<EvaluatedChromosome> members,
              std::optional<EvaluatedChromosome> new_best) {
    GenerationRecord rec;
    rec.generation = generation;
    rec.best = members.front();
    rec.members = std::move(members);
    rec.new_best = std::move(new_best);
    rec.evaluations = cache_.misses();
    rec.elapsed_seconds = elapsed();
    result_.best = rec.best;
    result_.records.push_back(rec);
    if (observer_) observer_->on_generation(result_.records.back());
  }

  RunResult finish(Termination termination, std::string error = {}) {
    result_.termination = termination;
    result_.error = std::move(error);
    result_.evaluations = cache_.misses();
    result_.cache_hits = cache_.hits();
    result_.elapsed_seconds = elapsed();
    return std::move(result_);
  }

  // Shared GA / hybrid generation loop. `breed` turns the crossover
  // children into the population for the end of the generation and reports
  // the best new chromosome.
  template <typename Breed>
  RunResult evolve(Breed&& breed) {
    try {
      validate_config(config_);
      const auto& space = config_.space;
      const auto initial =
          generate_population(space, config_.population_size, rng_);
      const auto fitness = cache_.evaluate_many(initial);
      std::vector<EvaluatedChromosome> members;
      for (std::size_t i = 0; i < initial.size(); ++i) {
        members.push_back({initial[i], fitness[i]});
      }
      Population pop(std::move(members), config_.population_size);
      set_best(pop.best());

      for (std::size_t gen = 1; gen <= config_.max_generations; ++gen) {
        if (pop.best().fitness >= config_.fitness_threshold) {
          record(gen, pop.members(), std::nullopt);
          return finish(Termination::kThresholdReached);
        }
        if (remaining() < 2) {
          return finish(Termination::kEvaluationBudgetExhausted);
        }
        const auto [p1, p2] = select_parents(pop);
        auto kids = crossover(p1.chromosome, p2.chromosome, config_.crossover,
                              rng_);
        EvaluatedChromosome new_best;
        pop = breed(pop, std::move(kids), new_best);
        record(gen, pop.members(), new_best);
      }
      return finish(Termination::kGenerationsExhausted);
    } catch (const EvaluationError& e) {
      return finish(Termination::kEvaluatorFailure, e.what());
    }
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  const RunConfig& config_;
  CachedEvaluator cache_;
  Rng rng_;
  RunObserver* observer_;
  std::chrono::steady_clock::time_point start_;
  RunResult result_;
};

const EvaluatedChromosome& better(const EvaluatedChromosome& a,
                                  const EvaluatedChromosome& b) {
  return ranks_before(b, a) ? b : a;
}

}  // namespace

RunResult run_hybrid(const RunConfig& config, FitnessEvaluator& inner,
                     RunObserver* observer) {
  RunState state(config, inner, observer);
  const auto hc_budget = effective_hc_budget(config);

  auto climb = [&](const EvaluatedChromosome& start) {
    const auto cap = std::min(hc_budget.max_evaluations, state.remaining());
    if (cap == 0) return start;
    return hill_climb(config.space, start, state.cache(), config.hc_strategy,
                      HcBudget{cap}, state.rng())
        .best;
  };

  return state.evolve([&](const Population& pop, ChildPair kids,
                          EvaluatedChromosome& new_best) {
    const std::vector<Chromosome> batch{kids.first, kids.second};
    const auto fitness = state.cache().evaluate_many(batch);

    // Hill climbing on each child in order; equivalent to mutate_children()
    // but with each climb capped by the run's remaining evaluations.
    std::vector<EvaluatedChromosome> children;
    children.push_back(climb({batch[0], fitness[0]}));
    children.push_back(climb({batch[1], fitness[1]}));
    new_best = better(children[0], children[1]);

    Population next = replace_worst(pop, std::move(children));
    if (config.hc_apply_to_best) {
      const auto improved = climb(next.best());
      if (improved.fitness > next.best().fitness) {
        auto members = next.members();
        members.front() = improved;
        next = Population(std::move(members), next.capacity());
      }
    }
    return next;
  });
}

RunResult run_ga(const RunConfig& config, FitnessEvaluator& inner,
                 RunObserver* observer) {
  RunState state(config, inner, observer);
  const double rate = effective_mutation_rate(config);

  return state.evolve([&](const Population& pop, ChildPair kids,
                          EvaluatedChromosome& new_best) {
    const std::vector<Chromosome> batch{
        random_reset_mutation(config.space, kids.first, rate, state.rng()),
        random_reset_mutation(config.space, kids.second, rate, state.rng())};
    const auto fitness = state.cache().evaluate_many(batch);
    std::vector<EvaluatedChromosome> children{{batch[0], fitness[0]},
                                              {batch[1], fitness[1]}};
    new_best = better(children[0], children[1]);
    return replace_worst(pop, std::move(children));
  });
}

RunResult run_hc(const RunConfig& config, FitnessEvaluator& inner,
                 RunObserver* observer) {
  RunState state(config, inner, observer);
  Termination termination = Termination::kGenerationsExhausted;
  try {
    validate_config(config);
    std::optional<EvaluatedChromosome> best;
    std::size_t restarts_done = 0;
    auto on_restart = [&](std::size_t r, const HcResult& climbed,
                          const EvaluatedChromosome& best_so_far) {
      best = best_so_far;
      restarts_done = r + 1;
      state.record(r + 1, {best_so_far}, climbed.best);
    };
    auto should_continue = [&] {
      if (best && best->fitness >= config.fitness_threshold) {
        termination = Termination::kThresholdReached;
        return false;
      }
      if (state.remaining() == 0) {
        termination = Termination::kEvaluationBudgetExhausted;
        return false;
      }
      return true;
    };
    // Calls bound misses from above, so capping calls keeps misses within
    // max_evaluations.
    const std::uint64_t total =
        config.max_evaluations == 0 ? kUnlimited : config.max_evaluations;
    random_restart_hc(
        config.space, config.max_generations, state.cache(), config.hc_strategy,
        effective_hc_budget(config), state.rng(), on_restart, should_continue,
        total);
    if (termination == Termination::kGenerationsExhausted &&
        restarts_done < config.max_generations) {
      termination = Termination::kEvaluationBudgetExhausted;
    }
    return state.finish(termination);
  } catch (const EvaluationError& e) {
    return state.finish(Termination::kEvaluatorFailure, e.what());
  }
}

RunResult run(const RunConfig& config, FitnessEvaluator& inner,
              RunObserver* observer) {
  switch (config.algorithm) {
    case Algorithm::kGa: return run_ga(config, inner, observer);
    case Algorithm::kHc: return run_hc(config, inner, observer);
    case Algorithm::kHybrid: break;
  }
  return run_hybrid(config, inner, observer);
}

}  // namespace memetic

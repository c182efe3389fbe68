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

#ifndef MEMETIC_DRIVER_H_
#define MEMETIC_DRIVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memetic/config.h"
#include "memetic/evaluator.h"
#include "memetic/space.h"

namespace memetic {

// Population state at the end of one generation (for pure hill climbing,
// one restart).
struct GenerationRecord {
  std::size_t generation = 0;  // 1-based
  std::vector<EvaluatedChromosome> members;
  EvaluatedChromosome best;
  // Best chromosome created this generation: the mutated children, or the
  // restart's local optimum. Absent when the generation stopped at the
  // threshold check.
  std::optional<EvaluatedChromosome> new_best;
  // Cumulative distinct evaluations (inner evaluator invocations).
  std::uint64_t evaluations = 0;
  double elapsed_seconds = 0.0;
};

enum class Termination {
  kThresholdReached,
  kGenerationsExhausted,
  kEvaluationBudgetExhausted,
  kEvaluatorFailure,
};

const char* to_string(Termination termination);

struct RunResult {
  Algorithm algorithm = Algorithm::kHybrid;
  std::uint64_t seed = 0;
  std::vector<GenerationRecord> records;
  // Absent only if the evaluator failed before anything was scored.
  std::optional<EvaluatedChromosome> best;
  Termination termination = Termination::kGenerationsExhausted;
  std::string error;
  std::uint64_t evaluations = 0;
  std::uint64_t cache_hits = 0;
  double elapsed_seconds = 0.0;
};

// Receives each record as soon as it is complete.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_generation(const GenerationRecord& record) = 0;
};

// Memetic loop. Per generation: threshold check on the evaluated population,
// top-2 selection, crossover, child evaluation, hill climbing on each child,
// worst-2 replacement, record. The initial population is scored as part of
// generation 1. `inner` is wrapped in a fresh CachedEvaluator.
RunResult run_hybrid(const RunConfig& config, FitnessEvaluator& inner,
                     RunObserver* observer = nullptr);

// Same loop with random-reset mutation instead of hill climbing. Children
// are scored once, after mutation.
RunResult run_ga(const RunConfig& config, FitnessEvaluator& inner,
                 RunObserver* observer = nullptr);

// Random-restart hill climbing, one restart per record with best-so-far
// semantics; restarts = max_generations.
RunResult run_hc(const RunConfig& config, FitnessEvaluator& inner,
                 RunObserver* observer = nullptr);

// Dispatches on config.algorithm.
RunResult run(const RunConfig& config, FitnessEvaluator& inner,
              RunObserver* observer = nullptr);

}  // namespace memetic

#endif  // MEMETIC_DRIVER_H_

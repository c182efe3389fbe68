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

#ifndef MEMETIC_CONFIG_H_
#define MEMETIC_CONFIG_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "memetic/evaluator.h"
#include "memetic/evolve.h"
#include "memetic/extproto.h"
#include "memetic/landscapes.h"
#include "memetic/localsearch.h"
#include "memetic/space.h"

namespace memetic {

enum class Algorithm { kHybrid, kGa, kHc };

const char* to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

struct EvaluatorSpec {
  enum class Kind { kHashed, kSeparable, kTrap, kExternal };

  Kind kind = Kind::kHashed;
  // hashed: landscape seed. separable: weight seed when weights are empty.
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> weights;
  // trap: default to all-zero trap and all-last-index target.
  std::optional<Chromosome> target;
  std::optional<Chromosome> trap;
  TrapLandscape::Params trap_params;
  // external
  proto::SessionOptions session;
  proto::OnError on_error = proto::OnError::kFail;
  bool deterministic = false;
};

struct BenchSettings {
  std::size_t repetitions = 30;
  std::optional<std::uint64_t> seed_base;
  std::vector<Algorithm> algorithms{Algorithm::kGa, Algorithm::kHc,
                                    Algorithm::kHybrid};
  // Generation indices reported as table rows; empty means
  // 1..min(max_generations, 5).
  std::vector<std::size_t> checkpoints;
};

struct RunConfig {
  Algorithm algorithm = Algorithm::kHybrid;
  std::size_t population_size = 5;
  std::size_t max_generations = 3;
  // 1.0 leaves threshold termination effectively off.
  double fitness_threshold = 1.0;
  std::uint64_t seed = 0;
  CrossoverMode crossover = CrossoverMode::kUniform;
  HcStrategy hc_strategy = HcStrategy::kFirstImprovement;
  std::optional<HcBudget> hc_budget;        // default 2 x neighborhood size
  bool hc_apply_to_best = false;
  std::optional<double> ga_mutation_rate;   // default 1 / gene count
  // Cap on distinct evaluations (evaluator invocations) per run; 0 = none.
  std::uint64_t max_evaluations = 0;
  SearchSpace space = default_cnn_space();
  EvaluatorSpec evaluator;
  BenchSettings bench;
};

HcBudget effective_hc_budget(const RunConfig& config);
double effective_mutation_rate(const RunConfig& config);

// Throws ConfigError for any violated invariant.
void validate_config(const RunConfig& config);

// Parses the JSON config document. Errors name the JSON pointer of the
// offending key, e.g. "config error at /hill_climbing/strategy: ...".
RunConfig parse_run_config(const nlohmann::json& doc);

// Reads and parses a config file; errors name the path.
RunConfig load_run_config(const std::string& path);

// Builds the evaluator named by config.evaluator. External evaluators are
// spawned and handshaken here; `stderr_fd` receives their stderr.
std::unique_ptr<FitnessEvaluator> make_evaluator(const RunConfig& config,
                                                 int stderr_fd = -1);

}  // namespace memetic

#endif  // MEMETIC_CONFIG_H_

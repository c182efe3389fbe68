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

#ifndef MEMETIC_BENCH_H_
#define MEMETIC_BENCH_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "memetic/config.h"
#include "memetic/driver.h"

namespace memetic {

struct CheckpointStats {
  std::string checkpoint;
  std::size_t samples = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double min = 0.0;
  double max = 0.0;
};

struct ArmReport {
  Algorithm algorithm = Algorithm::kHybrid;
  // One row per checkpoint: "generation_<k>" rows hold the best-of-
  // population after generation k (carried forward when a run stopped
  // earlier), then "final", "evaluations" and "runtime_seconds".
  std::vector<CheckpointStats> rows;
  std::size_t failures = 0;
  std::vector<std::string> failure_messages;
  std::vector<double> final_best;  // per successful repetition
};

struct BenchReport {
  std::vector<std::string> checkpoints;
  std::vector<ArmReport> arms;

  const ArmReport& arm(Algorithm algorithm) const;
};

using EvaluatorFactory =
    std::function<std::unique_ptr<FitnessEvaluator>(const RunConfig&)>;

// Runs every algorithm in config.bench.algorithms with seeds
// seed_base .. seed_base + repetitions - 1 on a fresh evaluator per run.
// All arms share the landscape and config.max_evaluations. Runs that end
// in evaluator failure are counted and left out of the statistics.
BenchReport bench_compare(const RunConfig& config,
                          const EvaluatorFactory& factory = {});

// CSV columns: algorithm,checkpoint,mean,stddev,min,max,failures
std::string to_csv(const BenchReport& report);

// Checkpoints as rows, algorithms as columns, "mean ± sd" cells.
std::string to_table(const BenchReport& report);

CheckpointStats summarize(std::string checkpoint,
                          const std::vector<double>& samples);

}  // namespace memetic

#endif  // MEMETIC_BENCH_H_

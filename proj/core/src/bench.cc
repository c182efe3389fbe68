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

#include "memetic/bench.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "memetic/errors.h"

namespace memetic {

const ArmReport& BenchReport::arm(Algorithm algorithm) const {
  for (const auto& a : arms) {
    if (a.algorithm == algorithm) return a;
  }
  throw ContractError(std::string("no bench arm for ") + to_string(algorithm));
}

CheckpointStats summarize(std::string checkpoint,
                          const std::vector<double>& samples) {
  CheckpointStats s;
  s.checkpoint = std::move(checkpoint);
  s.samples = samples.size();
  if (samples.empty()) {
    s.mean = s.stddev = s.min = s.max = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double n = static_cast<double>(samples.size());
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - s.mean) * (x - s.mean);
  s.stddev = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

BenchReport bench_compare(const RunConfig& config,
                          const EvaluatorFactory& factory) {
  validate_config(config);
  const auto& bench = config.bench;
  if (bench.algorithms.empty()) throw ConfigError("bench has no algorithms");
  std::vector<std::size_t> checkpoints = bench.checkpoints;
  if (checkpoints.empty()) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(config.max_generations, 5); ++k) {
      checkpoints.push_back(k);
    }
  }
  const std::uint64_t seed_base = bench.seed_base.value_or(config.seed);

  BenchReport report;
  for (std::size_t k : checkpoints) {
    report.checkpoints.push_back("generation_" + std::to_string(k));
  }
  report.checkpoints.insert(report.checkpoints.end(),
                            {"final", "evaluations", "runtime_seconds"});

  for (Algorithm algorithm : bench.algorithms) {
    ArmReport arm;
    arm.algorithm = algorithm;
    std::vector<std::vector<double>> samples(report.checkpoints.size());
    for (std::size_t rep = 0; rep < bench.repetitions; ++rep) {
      RunConfig run_config = config;
      run_config.algorithm = algorithm;
      run_config.seed = seed_base + rep;
      RunResult result;
      try {
        auto evaluator = factory ? factory(run_config) : make_evaluator(run_config);
        result = run(run_config, *evaluator);
      } catch (const EvaluationError& e) {
        result.termination = Termination::kEvaluatorFailure;
        result.error = e.what();
      }
      if (result.termination == Termination::kEvaluatorFailure || !result.best) {
        ++arm.failures;
        arm.failure_messages.push_back("seed " + std::to_string(run_config.seed) +
                                       ": " + result.error);
        continue;
      }
      std::size_t row = 0;
      for (std::size_t k : checkpoints) {
        // Runs that stopped before generation k keep their last best.
        double value = result.best->fitness;
        if (!result.records.empty()) {
          const std::size_t idx = std::min(k, result.records.size()) - 1;
          value = result.records[idx].best.fitness;
        }
        samples[row++].push_back(value);
      }
      samples[row++].push_back(result.best->fitness);
      samples[row++].push_back(static_cast<double>(result.evaluations));
      samples[row++].push_back(result.elapsed_seconds);
      arm.final_best.push_back(result.best->fitness);
    }
    for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
      arm.rows.push_back(summarize(report.checkpoints[i], samples[i]));
    }
    report.arms.push_back(std::move(arm));
  }
  return report;
}

std::string to_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "algorithm,checkpoint,mean,stddev,min,max,failures\n";
  os << std::setprecision(10);
  for (const auto& arm : report.arms) {
    for (const auto& row : arm.rows) {
      os << to_string(arm.algorithm) << ',' << row.checkpoint << ',' << row.mean
         << ',' << row.stddev << ',' << row.min << ',' << row.max << ','
         << arm.failures << '\n';
    }
  }
  return os.str();
}

std::string to_table(const BenchReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "checkpoint";
  for (const auto& arm : report.arms) {
    os << std::setw(24) << to_string(arm.algorithm);
  }
  os << '\n';
  for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
    os << std::setw(18) << report.checkpoints[i];
    for (const auto& arm : report.arms) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(4) << arm.rows[i].mean << " ± "
           << arm.rows[i].stddev;
      os << std::setw(25) << cell.str();
    }
    os << '\n';
  }
  os << std::setw(18) << "failures";
  for (const auto& arm : report.arms) os << std::setw(24) << arm.failures;
  os << '\n';
  return os.str();
}

}  // namespace memetic

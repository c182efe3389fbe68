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

#include "memetic/config.h"

#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "memetic/errors.h"
#include "support.h"

namespace memetic {
namespace {

using nlohmann::json;

std::string error_of(const json& doc) {
  try {
    parse_run_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, DefaultsAreFiveMembersThreeGenerations) {
  const auto c = parse_run_config(json::object());
  EXPECT_EQ(c.algorithm, Algorithm::kHybrid);
  EXPECT_EQ(c.population_size, 5u);
  EXPECT_EQ(c.max_generations, 3u);
  EXPECT_EQ(c.fitness_threshold, 1.0);
  EXPECT_EQ(c.crossover, CrossoverMode::kUniform);
  EXPECT_EQ(c.space, default_cnn_space());
  EXPECT_EQ(effective_hc_budget(c).max_evaluations, 42u);
  EXPECT_DOUBLE_EQ(effective_mutation_rate(c), 0.1);
  EXPECT_EQ(c.evaluator.kind, EvaluatorSpec::Kind::kHashed);
}

TEST(Config, FullDocument) {
  const auto c = parse_run_config(json::parse(R"({
    "algorithm": "ga", "population_size": 8, "max_generations": 12,
    "fitness_threshold": 0.9, "seed": 77, "crossover": "one_point",
    "hill_climbing": {"strategy": "steepest_ascent", "budget": 10, "apply_to_best": true},
    "ga_mutation_rate": 0.25, "max_evaluations": 500,
    "space": {"genes": [
      {"name": "lr", "kind": "ordinal", "values": ["0.1", "0.01"]},
      {"name": "opt", "kind": "categorical", "values": ["sgd", "adam", "rmsprop"]}]},
    "evaluator": {"type": "trap", "target": [1, 2], "trap": [0, 0],
                  "trap_value": 0.7, "slope": 0.4},
    "bench": {"repetitions": 4, "seed_base": 10, "algorithms": ["hybrid", "ga"],
              "checkpoints": [1, 5]}
  })"));
  EXPECT_EQ(c.algorithm, Algorithm::kGa);
  EXPECT_EQ(c.population_size, 8u);
  EXPECT_EQ(c.seed, 77u);
  EXPECT_EQ(c.crossover, CrossoverMode::kOnePoint);
  EXPECT_EQ(c.hc_strategy, HcStrategy::kSteepestAscent);
  EXPECT_EQ(effective_hc_budget(c).max_evaluations, 10u);
  EXPECT_TRUE(c.hc_apply_to_best);
  EXPECT_EQ(effective_mutation_rate(c), 0.25);
  EXPECT_EQ(c.max_evaluations, 500u);
  EXPECT_EQ(c.space.gene_count(), 2u);
  EXPECT_EQ(c.space.gene(1).domain[1], "adam");
  EXPECT_EQ(c.evaluator.kind, EvaluatorSpec::Kind::kTrap);
  EXPECT_EQ(*c.evaluator.target, (Chromosome{{1, 2}}));
  EXPECT_EQ(c.evaluator.trap_params.trap_value, 0.7);
  EXPECT_EQ(c.bench.repetitions, 4u);
  EXPECT_EQ(*c.bench.seed_base, 10u);
  EXPECT_EQ(c.bench.algorithms,
            (std::vector<Algorithm>{Algorithm::kHybrid, Algorithm::kGa}));
  auto ev = make_evaluator(c);
  EXPECT_EQ(ev->evaluate(Chromosome{{1, 2}}), 1.0);
}

TEST(Config, ErrorsNameTheKey) {
  const std::pair<const char*, const char*> cases[] = {
      {R"({"populaton_size": 5})", "/populaton_size: unknown key"},
      {R"({"population_size": "five"})", "/population_size"},
      {R"({"population_size": 2})", "population_size"},
      {R"({"max_generations": 0})", "max_generations"},
      {R"({"fitness_threshold": 1.5})", "fitness_threshold"},
      {R"({"crossover": "two_point"})", "/crossover"},
      {R"({"algorithm": "anneal"})", "/algorithm"},
      {R"({"hill_climbing": {"strategy": "tabu"}})", "/hill_climbing/strategy"},
      {R"({"hill_climbing": {"budget": 0}})", "budget"},
      {R"({"hill_climbing": {"depth": 1}})", "/hill_climbing/depth: unknown key"},
      {R"({"ga_mutation_rate": 2})", "ga_mutation_rate"},
      {R"({"max_evaluations": 3})", "max_evaluations"},
      {R"({"space": "tiny"})", "/space"},
      {R"({"space": {"genes": [{"name": "a1", "values": []}]}})", "empty domain: a1"},
      {R"({"space": {"genes": [{"name": "a", "kind": "fuzzy", "values": ["x"]}]}})",
       "fuzzy"},
      {R"({"evaluator": {"type": "oracle"}})", "/evaluator/type"},
      {R"({"evaluator": {"type": "external"}})", "/evaluator/command"},
      {R"({"evaluator": {"type": "trap", "target": [9,9,9,9,9,9,9,9,9,9]}})",
       "evaluator.target"},
      {R"({"evaluator": {"type": "external", "command": "x", "on_error": "retry"}})",
       "/evaluator/on_error"},
      {R"({"bench": {"repetitions": 1}})", "bench.repetitions"},
      {R"({"bench": {"algorithms": ["ga", "sa"]}})", "/bench/algorithms"},
      {R"([1, 2])", "expected an object"},
  };
  for (const auto& [doc, needle] : cases) {
    const auto msg = error_of(json::parse(doc));
    EXPECT_NE(msg.find(needle), std::string::npos) << doc << " -> " << msg;
  }
}

TEST(Config, OnePointNeedsTwoGenes) {
  const auto msg = error_of(json::parse(R"({"crossover": "one_point",
    "space": {"genes": [{"name": "a", "values": ["x", "y"]}]}})"));
  EXPECT_NE(msg.find("one_point"), std::string::npos) << msg;
}

TEST(Config, LoadNamesPathAndByte) {
  const auto dir = testing::scratch_dir("config_load");
  try {
    load_run_config((dir / "missing.json").string());
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.json"), std::string::npos);
  }
  const auto broken = dir / "broken.json";
  std::ofstream(broken) << "{\"seed\": 1,\n \"oops\" }";
  try {
    load_run_config(broken.string());
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("broken.json"), std::string::npos) << msg;
    EXPECT_NE(msg.find("at byte"), std::string::npos) << msg;
  }
  const auto bad_key = dir / "bad_key.json";
  std::ofstream(bad_key) << R"({"seed": 1, "colour": "red"})";
  try {
    load_run_config(bad_key.string());
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("bad_key.json"), std::string::npos) << msg;
    EXPECT_NE(msg.find("/colour"), std::string::npos) << msg;
  }
}

TEST(Config, EvaluatorsFromSpec) {
  const auto sep = parse_run_config(json::parse(R"({
    "space": {"genes": [{"name": "a", "values": ["x", "y"]}]},
    "evaluator": {"type": "separable", "weights": [[0.2, 0.8]]}})"));
  EXPECT_EQ(make_evaluator(sep)->evaluate(Chromosome{{1}}), 1.0);
  const auto hashed = parse_run_config(json::parse(R"({"evaluator": {"seed": 4}})"));
  const Chromosome c{std::vector<Allele>(10, 0)};
  EXPECT_EQ(make_evaluator(hashed)->evaluate(c), HashedLandscape::fitness_of(4, c));
}

TEST(Config, AlgorithmNames) {
  for (auto a : {Algorithm::kHybrid, Algorithm::kGa, Algorithm::kHc}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
}

}  // namespace
}  // namespace memetic

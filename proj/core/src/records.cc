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

#include "memetic/records.h"

#include <cerrno>
#include <cstring>

#include "memetic/errors.h"

namespace memetic {

using nlohmann::ordered_json;

ordered_json to_json(const SearchSpace& space, const EvaluatedChromosome& ec) {
  ordered_json genes = ordered_json::object();
  for (const auto& [name, token] : tokens_of(space, ec.chromosome)) {
    genes[name] = token;
  }
  ordered_json out;
  out["genes"] = std::move(genes);
  out["fitness"] = ec.fitness;
  return out;
}

ordered_json to_json(const SearchSpace& space, const GenerationRecord& record) {
  ordered_json out;
  out["generation"] = record.generation;
  out["best"] = to_json(space, record.best);
  out["new_best"] = record.new_best ? to_json(space, *record.new_best)
                                    : ordered_json(nullptr);
  out["evaluations"] = record.evaluations;
  ordered_json members = ordered_json::array();
  for (const auto& m : record.members) members.push_back(to_json(space, m));
  out["members"] = std::move(members);
  return out;
}

ordered_json to_json(const RunConfig& config, const RunResult& result) {
  ordered_json out;
  out["algorithm"] = to_string(result.algorithm);
  out["seed"] = result.seed;
  out["termination"] = to_string(result.termination);
  out["generations"] = result.records.size();
  out["best"] = result.best ? to_json(config.space, *result.best)
                            : ordered_json(nullptr);
  out["evaluations"] = result.evaluations;
  out["cache_hits"] = result.cache_hits;
  ordered_json best_per_generation = ordered_json::array();
  ordered_json elapsed = ordered_json::array();
  for (const auto& r : result.records) {
    best_per_generation.push_back(r.best.fitness);
    elapsed.push_back(r.elapsed_seconds);
  }
  out["best_per_generation"] = std::move(best_per_generation);
  out["generation_elapsed_seconds"] = std::move(elapsed);
  out["elapsed_seconds"] = result.elapsed_seconds;
  out["error"] = result.error.empty() ? ordered_json(nullptr)
                                      : ordered_json(result.error);
  return out;
}

JsonlWriter::JsonlWriter(const std::string& path, const SearchSpace& space)
    : out_(path, std::ios::out | std::ios::trunc), space_(space) {
  if (!out_) {
    throw std::runtime_error("cannot open " + path + ": " + std::strerror(errno));
  }
}

void JsonlWriter::on_generation(const GenerationRecord& record) {
  out_ << to_json(space_, record).dump() << '\n';
  out_.flush();
}

}  // namespace memetic

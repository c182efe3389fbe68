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

#ifndef MEMETIC_RECORDS_H_
#define MEMETIC_RECORDS_H_

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "memetic/config.h"
#include "memetic/driver.h"

namespace memetic {

// {"genes":{"f1":"64",...},"fitness":0.47}, genes in space order.
nlohmann::ordered_json to_json(const SearchSpace& space,
                               const EvaluatedChromosome& ec);

// One run.jsonl line. Wall-clock time is left out so that identical runs
// produce identical bytes; it is reported in result.json instead.
nlohmann::ordered_json to_json(const SearchSpace& space,
                               const GenerationRecord& record);

// result.json summary.
nlohmann::ordered_json to_json(const RunConfig& config, const RunResult& result);

// Appends one record per line to a file, flushing after each.
class JsonlWriter final : public RunObserver {
 public:
  JsonlWriter(const std::string& path, const SearchSpace& space);

  void on_generation(const GenerationRecord& record) override;

 private:
  std::ofstream out_;
  const SearchSpace& space_;
};

}  // namespace memetic

#endif  // MEMETIC_RECORDS_H_

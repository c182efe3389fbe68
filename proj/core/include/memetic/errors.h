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

#ifndef MEMETIC_ERRORS_H_
#define MEMETIC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace memetic {

// Invalid run configuration or search space. Messages name the offending
// key or gene.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (mismatched spaces, wrong
// arity, out-of-range allele).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The evaluator returned an error or an out-of-range fitness for one
// chromosome. Never cached.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The external evaluator session is unusable (timeout, framing, id
// mismatch, process exit). Aborts the run.
class SessionError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

}  // namespace memetic

#endif  // MEMETIC_ERRORS_H_

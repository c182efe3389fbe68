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

#ifndef MEMETIC_TOOLS_CLI_H_
#define MEMETIC_TOOLS_CLI_H_

namespace memetic::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kConfigError = 2,
  kEvaluatorError = 3,
  kIoError = 4,
  kSelftestFailed = 5,
};

// Entry point for the `memetic` tool:
//   run --config <path> [--algo hybrid|ga|hc] [--seed N] [--out <dir>]
//   bench --config <path> --reps R --out <dir> [--seed-base N]
//   space show [--config <path>]
//   proto selftest [--cmd "<evaluator command>"] [--config <path>]
//   proto echo [--config <path>] [--seed N] [--fault F] [--pad N]
int cli_main(int argc, char** argv);

}  // namespace memetic::cli

#endif  // MEMETIC_TOOLS_CLI_H_

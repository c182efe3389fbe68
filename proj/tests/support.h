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

#ifndef MEMETIC_TESTS_SUPPORT_H_
#define MEMETIC_TESTS_SUPPORT_H_

#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "memetic/errors.h"
#include "memetic/evaluator.h"
#include "memetic/space.h"
#include "memetic/subprocess.h"

namespace memetic::testing {

// genes g0..g{n-1}, each with tokens "0".."{vals-1}".
inline SearchSpace uniform_space(std::size_t genes, std::size_t vals) {
  std::vector<GeneSpec> specs;
  for (std::size_t i = 0; i < genes; ++i) {
    GeneSpec g{"g" + std::to_string(i), GeneKind::kOrdinal, {}};
    for (std::size_t v = 0; v < vals; ++v) g.domain.push_back(std::to_string(v));
    specs.push_back(std::move(g));
  }
  return SearchSpace(std::move(specs));
}

inline SearchSpace space_of(const std::vector<std::size_t>& sizes) {
  std::vector<GeneSpec> specs;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    GeneSpec g{"g" + std::to_string(i), GeneKind::kCategorical, {}};
    for (std::size_t v = 0; v < sizes[i]; ++v) {
      g.domain.push_back("v" + std::to_string(v));
    }
    specs.push_back(std::move(g));
  }
  return SearchSpace(std::move(specs));
}

inline Chromosome chrom(std::vector<Allele> alleles) {
  return Chromosome{std::move(alleles)};
}

// Wraps an evaluator and records every inner call.
class CountingEvaluator final : public FitnessEvaluator {
 public:
  explicit CountingEvaluator(FitnessEvaluator& inner) : inner_(inner) {}
  double evaluate(const Chromosome& c) override {
    ++calls;
    distinct.insert(c);
    return inner_.evaluate(c);
  }
  bool deterministic() const override { return inner_.deterministic(); }

  std::uint64_t calls = 0;
  std::set<Chromosome> distinct;

 private:
  FitnessEvaluator& inner_;
};

class FunctionEvaluator final : public FitnessEvaluator {
 public:
  explicit FunctionEvaluator(std::function<double(const Chromosome&)> f)
      : f_(std::move(f)) {}
  double evaluate(const Chromosome& c) override { return f_(c); }
  bool deterministic() const override { return true; }

 private:
  std::function<double(const Chromosome&)> f_;
};

// In-memory transport: each written line is handed to a script that
// returns the lines the peer sends back.
class ScriptedTransport final : public LineTransport {
 public:
  using Script = std::function<std::vector<std::string>(const std::string&)>;
  explicit ScriptedTransport(Script script) : script_(std::move(script)) {}

  void write_line(std::string_view line, Deadline) override {
    written.emplace_back(line);
    for (auto& reply : script_(std::string(line))) inbox_.push_back(reply);
  }
  std::string read_line(Deadline) override {
    if (inbox_.empty()) throw SessionError("evaluator closed its output");
    std::string line = inbox_.front();
    inbox_.pop_front();
    return line;
  }

  std::vector<std::string> written;

 private:
  Script script_;
  std::deque<std::string> inbox_;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs a shell command, capturing stdout and stderr.
inline CommandResult run_command(const std::string& command,
                                 const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);
  const auto out = scratch / "cmd.stdout";
  const auto err = scratch / "cmd.stderr";
  const std::string full =
      command + " >" + out.string() + " 2>" + err.string() + " </dev/null";
  const int status = std::system(full.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("memetic_test_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace memetic::testing

#endif  // MEMETIC_TESTS_SUPPORT_H_

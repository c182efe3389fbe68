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

#include "cli.h"

#include <fcntl.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "memetic/bench.h"
#include "memetic/config.h"
#include "memetic/driver.h"
#include "memetic/errors.h"
#include "memetic/extproto.h"
#include "memetic/records.h"

namespace memetic::cli {

namespace fs = std::filesystem;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string self_executable() {
  std::error_code ec;
  auto path = fs::read_symlink("/proc/self/exe", ec);
  return ec ? std::string("memetic") : path.string();
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  return out + "'";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " +
                        ec.message());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out.flush()) throw IoError("cannot write " + path.string());
}

// Owns the log file external evaluators write their stderr to.
class EvaluatorLog {
 public:
  explicit EvaluatorLog(const RunConfig& config, const fs::path& out_dir) {
    if (config.evaluator.kind != EvaluatorSpec::Kind::kExternal) return;
    const auto path = out_dir / "evaluator.log";
    fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw IoError("cannot open " + path.string());
  }
  ~EvaluatorLog() {
    if (fd_ >= 0) ::close(fd_);
  }
  EvaluatorLog(const EvaluatorLog&) = delete;
  EvaluatorLog& operator=(const EvaluatorLog&) = delete;

  int fd() const { return fd_; }

 private:
  int fd_ = -1;
};

std::string describe(const SearchSpace& space, const EvaluatedChromosome& ec) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << ec.fitness << " {";
  bool first = true;
  for (const auto& [name, token] : tokens_of(space, ec.chromosome)) {
    os << (first ? "" : ", ") << name << "=" << token;
    first = false;
  }
  os << "}";
  return os.str();
}

// Streams run.jsonl and prints each generation's best to stdout.
class RunPrinter final : public RunObserver {
 public:
  RunPrinter(const fs::path& jsonl, const SearchSpace& space)
      : writer_(jsonl.string(), space), space_(space) {}

  void on_generation(const GenerationRecord& record) override {
    writer_.on_generation(record);
    std::cout << "generation " << record.generation << "  best "
              << describe(space_, record.best) << "  evaluations "
              << record.evaluations << std::endl;
  }

 private:
  JsonlWriter writer_;
  const SearchSpace& space_;
};

int do_run(const std::string& config_path, const std::optional<std::string>& algo,
           const std::optional<std::uint64_t>& seed, const std::string& out) {
  RunConfig config = load_run_config(config_path);
  if (algo) config.algorithm = parse_algorithm(*algo);
  if (seed) config.seed = *seed;
  validate_config(config);

  const fs::path out_dir(out);
  ensure_dir(out_dir);
  EvaluatorLog log(config, out_dir);
  auto evaluator = make_evaluator(config, log.fd());

  write_file(out_dir / "run.jsonl", "");
  RunResult result;
  {
    RunPrinter printer(out_dir / "run.jsonl", config.space);
    result = run(config, *evaluator, &printer);
  }
  write_file(out_dir / "result.json", to_json(config, result).dump(2) + "\n");

  if (result.best) {
    std::cout << "final best " << describe(config.space, *result.best) << "\n";
  }
  std::cout << "termination " << to_string(result.termination) << ", "
            << result.evaluations << " evaluations, " << result.cache_hits
            << " cache hits\n";
  if (result.termination == Termination::kEvaluatorFailure) {
    std::cerr << "error[evaluator]: " << result.error << "\n";
    return kEvaluatorError;
  }
  return kOk;
}

int do_bench(const std::string& config_path, std::size_t reps,
             const std::optional<std::uint64_t>& seed_base, const std::string& out) {
  RunConfig config = load_run_config(config_path);
  config.bench.repetitions = reps;
  if (seed_base) config.bench.seed_base = *seed_base;
  validate_config(config);

  const fs::path out_dir(out);
  ensure_dir(out_dir);
  EvaluatorLog log(config, out_dir);
  const int fd = log.fd();
  const auto report = bench_compare(config, [fd](const RunConfig& c) {
    return make_evaluator(c, fd);
  });

  write_file(out_dir / "summary.csv", to_csv(report));
  nlohmann::ordered_json detail;
  for (const auto& arm : report.arms) {
    auto& a = detail[to_string(arm.algorithm)];
    a["final_best"] = arm.final_best;
    a["failures"] = arm.failures;
    a["failure_messages"] = arm.failure_messages;
  }
  write_file(out_dir / "bench.json", detail.dump(2) + "\n");
  std::cout << to_table(report);

  std::size_t failures = 0;
  for (const auto& arm : report.arms) failures += arm.failures;
  if (failures > 0) {
    std::cerr << "error[evaluator]: " << failures << " run(s) failed; see "
              << (out_dir / "bench.json").string() << "\n";
    return kEvaluatorError;
  }
  return kOk;
}

SearchSpace space_from(const std::optional<std::string>& config_path) {
  return config_path ? load_run_config(*config_path).space : default_cnn_space();
}

int do_space_show(const std::optional<std::string>& config_path) {
  const SearchSpace space = space_from(config_path);
  std::cout << std::left << std::setw(12) << "gene" << std::setw(13) << "kind"
            << std::setw(6) << "size" << "values\n";
  for (const auto& g : space.genes()) {
    std::cout << std::setw(12) << g.name << std::setw(13) << to_string(g.kind)
              << std::setw(6) << g.size();
    for (std::size_t i = 0; i < g.domain.size(); ++i) {
      std::cout << (i ? " " : "") << g.domain[i];
    }
    std::cout << "\n";
  }
  const auto card = space.cardinality();
  std::cout << "cardinality " << (card ? std::to_string(*card) : "overflow")
            << "\n";
  return kOk;
}

int do_selftest(const std::optional<std::string>& cmd,
                const std::optional<std::string>& config_path,
                std::size_t requests, std::size_t window, std::uint64_t echo_seed,
                const std::optional<std::uint64_t>& verify_seed,
                double timeout_seconds) {
  proto::SelftestOptions options;
  options.space = space_from(config_path);
  options.sequential_requests = requests;
  options.pipelined_requests = window;
  options.timeout = std::chrono::milliseconds(
      static_cast<std::int64_t>(timeout_seconds * 1000));
  if (cmd) {
    options.command = *cmd;
    options.verify_seed = verify_seed;
  } else {
    options.command = shell_quote(self_executable()) + " proto echo --seed " +
                      std::to_string(echo_seed);
    if (config_path) options.command += " --config " + shell_quote(*config_path);
    options.verify_seed = verify_seed.value_or(echo_seed);
  }
  auto report = proto::echo_evaluator_selftest(options);
  if (!cmd) {
    // The built-in evaluator also replays every scripted fault.
    std::string echo = shell_quote(self_executable()) + " proto echo";
    if (config_path) echo += " --config " + shell_quote(*config_path);
    const auto fixtures =
        proto::run_conformance_fixtures(echo, options.space, options.timeout);
    report.ok = report.ok && fixtures.ok;
    report.lines.insert(report.lines.end(), fixtures.lines.begin(),
                        fixtures.lines.end());
  }
  for (const auto& line : report.lines) std::cout << line << "\n";
  if (!report.ok) {
    std::cerr << "error[protocol]: selftest failed\n";
    return kSelftestFailed;
  }
  std::cout << "selftest ok\n";
  return kOk;
}

int do_echo(const std::optional<std::string>& config_path, std::uint64_t seed,
            const std::string& fault, std::size_t pad) {
  proto::EchoOptions options;
  options.space = space_from(config_path);
  options.seed = seed;
  options.fault = proto::parse_echo_fault(fault);
  options.pad = pad;
  return proto::serve_echo(options, STDIN_FILENO, STDOUT_FILENO);
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Memetic (genetic algorithm + hill climbing) hyperparameter search"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> algo;
  std::optional<std::uint64_t> seed;
  std::string out = "out";

  auto* run_cmd = app.add_subcommand("run", "Run one optimization");
  run_cmd->add_option("--config", config_path, "Run config (JSON)")->required();
  run_cmd->add_option("--algo", algo, "hybrid, ga or hc (overrides config)");
  run_cmd->add_option("--seed", seed, "Seed (overrides config)");
  run_cmd->add_option("--out", out, "Output directory");

  std::size_t reps = 30;
  std::optional<std::uint64_t> seed_base;
  auto* bench_cmd = app.add_subcommand("bench", "Compare ga, hc and hybrid over seeds");
  bench_cmd->add_option("--config", config_path, "Run config (JSON)")->required();
  bench_cmd->add_option("--reps", reps, "Repetitions per algorithm")->required();
  bench_cmd->add_option("--out", out, "Output directory")->required();
  bench_cmd->add_option("--seed-base", seed_base, "First seed (default: config seed)");

  std::optional<std::string> opt_config;
  auto* space_cmd = app.add_subcommand("space", "Inspect the search space");
  space_cmd->require_subcommand(1);
  auto* show_cmd = space_cmd->add_subcommand("show", "Print the gene table");
  show_cmd->add_option("--config", opt_config, "Run config (default space if omitted)");

  auto* proto_cmd = app.add_subcommand("proto", "Evaluator protocol tools");
  proto_cmd->require_subcommand(1);
  std::optional<std::string> cmd;
  std::size_t requests = 8;
  std::size_t window = 8;
  std::uint64_t echo_seed = 0;
  std::optional<std::uint64_t> verify_seed;
  double timeout = 10.0;
  auto* selftest_cmd =
      proto_cmd->add_subcommand("selftest", "Check an evaluator against the protocol");
  selftest_cmd->add_option("--cmd", cmd, "Evaluator command (default: built-in echo)");
  selftest_cmd->add_option("--config", opt_config, "Config supplying the space");
  selftest_cmd->add_option("--requests", requests, "Sequential requests");
  selftest_cmd->add_option("--window", window, "Pipelined requests in flight");
  selftest_cmd->add_option("--seed", echo_seed, "Seed for the built-in echo evaluator");
  selftest_cmd->add_option("--verify-seed", verify_seed,
                           "Require fitness == hashed landscape with this seed");
  selftest_cmd->add_option("--timeout", timeout, "Per-message timeout, seconds");

  std::string fault = "none";
  std::size_t pad = 0;
  auto* echo_cmd = proto_cmd->add_subcommand(
      "echo", "Reference evaluator: hashed-landscape fitness over stdio");
  echo_cmd->add_option("--config", opt_config, "Config supplying the space");
  echo_cmd->add_option("--seed", echo_seed, "Landscape seed");
  echo_cmd->add_option("--fault", fault, "Simulated misbehaviour");
  echo_cmd->add_option("--pad", pad, "Filler bytes per response");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run_cmd) return do_run(config_path, algo, seed, out);
    if (*bench_cmd) return do_bench(config_path, reps, seed_base, out);
    if (*show_cmd) return do_space_show(opt_config);
    if (*selftest_cmd) {
      return do_selftest(cmd, opt_config, requests, window, echo_seed,
                         verify_seed, timeout);
    }
    if (*echo_cmd) return do_echo(opt_config, echo_seed, fault, pad);
  } catch (const ConfigError& e) {
    std::cerr << "error[config]: " << e.what() << "\n";
    return kConfigError;
  } catch (const EvaluationError& e) {
    std::cerr << "error[evaluator]: " << e.what() << "\n";
    return kEvaluatorError;
  } catch (const IoError& e) {
    std::cerr << "error[io]: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace memetic::cli

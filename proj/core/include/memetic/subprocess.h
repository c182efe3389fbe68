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

#ifndef MEMETIC_SUBPROCESS_H_
#define MEMETIC_SUBPROCESS_H_

#include <sys/types.h>

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace memetic {

using Clock = std::chrono::steady_clock;
using Deadline = Clock::time_point;

// Line-oriented duplex channel. Lines exclude the trailing '\n'.
class LineTransport {
 public:
  virtual ~LineTransport() = default;

  // Sends line + '\n'. Implementations must keep accepting inbound data
  // while a write is blocked so a peer that writes before reading cannot
  // deadlock the channel.
  virtual void write_line(std::string_view line, Deadline deadline) = 0;

  // Next complete inbound line. Throws SessionError on timeout or EOF.
  virtual std::string read_line(Deadline deadline) = 0;
};

// A child process running `/bin/sh -c command` with its stdin and stdout
// connected to this object. stderr goes to `stderr_fd`, or is inherited
// when that is negative.
class Subprocess final : public LineTransport {
 public:
  Subprocess(const std::string& command, int stderr_fd = -1);
  ~Subprocess() override;

  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  void write_line(std::string_view line, Deadline deadline) override;
  std::string read_line(Deadline deadline) override;

  pid_t pid() const { return pid_; }

  // "exited with status N", "killed by signal N" or "running".
  std::string exit_description();

 private:
  // Reads whatever is available into buffer_. Returns false on EOF.
  bool drain_stdout();
  std::optional<std::string> take_line();
  void reap(std::chrono::milliseconds grace);

  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  bool stdout_eof_ = false;
  std::optional<int> wait_status_;
  std::string buffer_;
};

}  // namespace memetic

#endif  // MEMETIC_SUBPROCESS_H_

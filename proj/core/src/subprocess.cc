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

#include "memetic/subprocess.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

#include "memetic/errors.h"

namespace memetic {

namespace {

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

void set_nonblocking(int fd) {
  const int flags = ::fcntl(fd, F_GETFL);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

int remaining_ms(Deadline deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
      deadline - Clock::now());
  if (left.count() <= 0) return 0;
  if (left.count() > 1'000'000'000) return 1'000'000'000;
  return static_cast<int>(left.count());
}

}  // namespace

Subprocess::Subprocess(const std::string& command, int stderr_fd) {
  ignore_sigpipe_once();
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    throw SessionError(std::string("pipe: ") + std::strerror(errno));
  }
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw SessionError(std::string("pipe: ") + std::strerror(errno));
  }
  pid_ = ::fork();
  if (pid_ < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
      ::close(fd);
    }
    throw SessionError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid_ == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    if (stderr_fd >= 0) ::dup2(stderr_fd, STDERR_FILENO);
    ::signal(SIGPIPE, SIG_DFL);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  stdin_fd_ = to_child[1];
  stdout_fd_ = from_child[0];
  set_nonblocking(stdin_fd_);
  set_nonblocking(stdout_fd_);
}

Subprocess::~Subprocess() {
  if (stdin_fd_ >= 0) ::close(stdin_fd_);
  if (stdout_fd_ >= 0) ::close(stdout_fd_);
  reap(std::chrono::milliseconds(2000));
}

void Subprocess::reap(std::chrono::milliseconds grace) {
  if (pid_ <= 0 || wait_status_) return;
  const auto until = Clock::now() + grace;
  for (;;) {
    int status = 0;
    const pid_t r = ::waitpid(pid_, &status, WNOHANG);
    if (r == pid_) {
      wait_status_ = status;
      return;
    }
    if (r < 0) return;
    if (Clock::now() >= until) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ::kill(pid_, SIGKILL);
  int status = 0;
  if (::waitpid(pid_, &status, 0) == pid_) wait_status_ = status;
}

std::string Subprocess::exit_description() {
  if (!wait_status_) {
    int status = 0;
    if (::waitpid(pid_, &status, WNOHANG) == pid_) wait_status_ = status;
  }
  if (!wait_status_) return "running";
  if (WIFEXITED(*wait_status_)) {
    return "exited with status " + std::to_string(WEXITSTATUS(*wait_status_));
  }
  if (WIFSIGNALED(*wait_status_)) {
    return "killed by signal " + std::to_string(WTERMSIG(*wait_status_));
  }
  return "stopped";
}

bool Subprocess::drain_stdout() {
  char chunk[65536];
  for (;;) {
    const ssize_t n = ::read(stdout_fd_, chunk, sizeof chunk);
    if (n > 0) {
      buffer_.append(chunk, static_cast<std::size_t>(n));
      continue;
    }
    if (n == 0) {
      stdout_eof_ = true;
      return false;
    }
    if (errno == EINTR) continue;
    if (errno == EAGAIN || errno == EWOULDBLOCK) return true;
    throw SessionError(std::string("read from evaluator: ") +
                       std::strerror(errno));
  }
}

std::optional<std::string> Subprocess::take_line() {
  const auto nl = buffer_.find('\n');
  if (nl == std::string::npos) return std::nullopt;
  std::string line = buffer_.substr(0, nl);
  buffer_.erase(0, nl + 1);
  return line;
}

void Subprocess::write_line(std::string_view line, Deadline deadline) {
  std::string data(line);
  data.push_back('\n');
  std::size_t sent = 0;
  while (sent < data.size()) {
    pollfd fds[2] = {{stdin_fd_, POLLOUT, 0}, {stdout_fd_, POLLIN, 0}};
    const nfds_t nfds = stdout_eof_ ? 1 : 2;
    const int ready = ::poll(fds, nfds, remaining_ms(deadline));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw SessionError(std::string("poll: ") + std::strerror(errno));
    }
    if (ready == 0) {
      throw SessionError("timeout writing request to evaluator");
    }
    if (nfds == 2 && (fds[1].revents & (POLLIN | POLLHUP))) drain_stdout();
    if (fds[0].revents & (POLLERR | POLLHUP)) {
      throw SessionError("evaluator closed its input (" + exit_description() +
                         ")");
    }
    if (fds[0].revents & POLLOUT) {
      const ssize_t n =
          ::write(stdin_fd_, data.data() + sent, data.size() - sent);
      if (n > 0) {
        sent += static_cast<std::size_t>(n);
      } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
        throw SessionError("evaluator closed its input (" +
                           exit_description() + ")");
      }
    }
  }
}

std::string Subprocess::read_line(Deadline deadline) {
  for (;;) {
    if (auto line = take_line()) return *std::move(line);
    if (stdout_eof_) {
      reap(std::chrono::milliseconds(500));
      std::string msg = "evaluator closed its output (" + exit_description() + ")";
      if (!buffer_.empty()) msg += "; unterminated trailing bytes: " + buffer_;
      throw SessionError(msg);
    }
    pollfd fd{stdout_fd_, POLLIN, 0};
    const int ready = ::poll(&fd, 1, remaining_ms(deadline));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw SessionError(std::string("poll: ") + std::strerror(errno));
    }
    if (ready == 0) throw SessionError("timeout waiting for evaluator");
    drain_stdout();
  }
}

}  // namespace memetic

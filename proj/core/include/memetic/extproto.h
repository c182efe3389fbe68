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

#ifndef MEMETIC_EXTPROTO_H_
#define MEMETIC_EXTPROTO_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "memetic/evaluator.h"
#include "memetic/space.h"
#include "memetic/subprocess.h"

namespace memetic::proto {

// Line-delimited JSON protocol spoken with external fitness evaluators over
// the child's stdin/stdout. One UTF-8 JSON object per '\n'-terminated line:
//
//   -> {"hello":{"protocol":1,"genes":["f1","f2",...]}}
//   <- {"ready":{"protocol":1}}
//   -> {"id":7,"genes":{"f1":"64",...}}
//   <- {"id":7,"fitness":0.47}      or      {"id":7,"error":"OOM"}
//
// Responses are matched to requests by id only; unknown fields are ignored.
inline constexpr int kProtocolVersion = 1;

struct EvalRequest {
  std::uint64_t id = 0;
  std::vector<std::pair<std::string, std::string>> genes;
};

struct EvalResponse {
  std::uint64_t id = 0;
  std::optional<double> fitness;
  std::optional<std::string> error;
};

// Escaped, length-capped rendering of raw bytes for diagnostics.
std::string quote_bytes(std::string_view bytes, std::size_t max = 200);

// Parses one line as exactly one JSON object. Throws SessionError naming
// the offending bytes for CR/BOM, trailing data, or invalid JSON.
nlohmann::json parse_line(std::string_view line);

std::string encode_hello(const SearchSpace& space);
std::string encode_request(const EvalRequest& request);
EvalRequest make_request(std::uint64_t id, const SearchSpace& space,
                         const Chromosome& c);
// Throws SessionError on a malformed response.
EvalResponse decode_response(std::string_view line);

// Sends hello and waits for ready. Returns the negotiated version.
int session_handshake(LineTransport& transport, const SearchSpace& space,
                      Deadline deadline);

struct SessionOptions {
  std::string command;
  std::chrono::milliseconds handshake_timeout{std::chrono::seconds(30)};
  std::chrono::milliseconds request_timeout{std::chrono::hours(24)};
  // Requests in flight at once during evaluate_batch().
  std::size_t window = 1;
  // stderr of the evaluator; negative inherits ours.
  int stderr_fd = -1;
};

// Either a fitness or the evaluator's error message.
struct EvalOutcome {
  std::optional<double> fitness;
  std::string error;

  bool ok() const { return fitness.has_value(); }
};

class EvaluatorSession {
 public:
  // Takes over an already-connected transport and performs the handshake.
  EvaluatorSession(SearchSpace space, std::unique_ptr<LineTransport> transport,
                   const SessionOptions& options);

  // Spawns options.command and performs the handshake.
  static std::unique_ptr<EvaluatorSession> spawn(SearchSpace space,
                                                 const SessionOptions& options);

  int protocol_version() const { return version_; }
  const SearchSpace& space() const { return space_; }

  EvalOutcome evaluate(const Chromosome& c);

  // Pipelines up to options.window requests; results in input order.
  std::vector<EvalOutcome> evaluate_batch(std::span<const Chromosome> batch);

  // Responses that arrived in a different order than their requests.
  std::uint64_t out_of_order_responses() const { return out_of_order_; }
  std::uint64_t requests_sent() const { return next_id_ - 1; }

  void set_window(std::size_t window) { options_.window = window; }

 private:
  SearchSpace space_;
  std::unique_ptr<LineTransport> transport_;
  SessionOptions options_;
  int version_ = 0;
  std::uint64_t next_id_ = 1;
  std::uint64_t out_of_order_ = 0;
};

enum class OnError { kFail, kZero };

// FitnessEvaluator backed by an external session. An evaluator `error`
// response raises EvaluationError, or scores 0.0 under OnError::kZero.
class ExternalEvaluator final : public FitnessEvaluator {
 public:
  ExternalEvaluator(std::unique_ptr<EvaluatorSession> session, OnError on_error,
                    bool deterministic = false);

  double evaluate(const Chromosome& c) override;
  std::vector<double> evaluate_many(std::span<const Chromosome> batch) override;
  bool deterministic() const override { return deterministic_; }

  EvaluatorSession& session() { return *session_; }

 private:
  double resolve(const Chromosome& c, const EvalOutcome& outcome);

  std::unique_ptr<EvaluatorSession> session_;
  OnError on_error_;
  bool deterministic_;
};

// Misbehaviours the reference evaluator can simulate, used as protocol
// fixtures.
enum class EchoFault {
  kNone,
  kReorder,        // answers each burst of pending requests in reverse
  kTwoPerLine,     // writes two response objects on one line
  kBadJson,        // writes a non-JSON response line
  kWrongId,        // answers id + 1
  kBadHello,       // non-JSON handshake reply
  kVersion2,       // announces protocol 2
  kOutOfRange,     // fitness 1.5
  kErrorResponse,  // every request answered with {"error":"OOM"}
  kCrash,          // exits after the handshake
  kCrlf,           // terminates lines with "\r\n"
  kSilent,         // never answers requests
};

const char* to_string(EchoFault fault);
EchoFault parse_echo_fault(std::string_view name);

struct EchoOptions {
  SearchSpace space;
  std::uint64_t seed = 0;
  EchoFault fault = EchoFault::kNone;
  // Bytes of filler added to each response in an ignored "pad" field.
  std::size_t pad = 0;
};

// Reference evaluator loop over raw file descriptors: handshake, then
// fitness = HashedLandscape(seed) of the requested tokens. Returns the
// process exit status.
int serve_echo(const EchoOptions& options, int in_fd, int out_fd);

struct SelftestOptions {
  std::string command;
  SearchSpace space;
  std::size_t sequential_requests = 8;
  std::size_t pipelined_requests = 8;
  std::uint64_t request_seed = 1;
  // When set, every fitness must equal HashedLandscape(seed).
  std::optional<std::uint64_t> verify_seed;
  std::chrono::milliseconds timeout{std::chrono::seconds(10)};
};

struct SelftestReport {
  bool ok = false;
  std::uint64_t out_of_order = 0;
  std::vector<std::string> lines;
};

// Handshake, a sequential phase and a pipelined phase against `command`.
// Any framing, ordering or range violation fails the report with the
// offending line.
SelftestReport echo_evaluator_selftest(const SelftestOptions& options);

// One scripted misbehaviour of the reference evaluator and how the client
// must react to it.
struct ConformanceFixture {
  EchoFault fault = EchoFault::kNone;
  bool should_pass = true;
  // Substring the client's diagnostic must contain when should_pass is false.
  std::string expected_error;
};

const std::vector<ConformanceFixture>& conformance_fixtures();

// Runs the selftest once per fixture, spawning
// "<echo_command> --fault <name>" each time. The report is ok only if every
// fixture behaved as expected; one line per fixture.
SelftestReport run_conformance_fixtures(const std::string& echo_command,
                                        const SearchSpace& space,
                                        std::chrono::milliseconds timeout);

}  // namespace memetic::proto

#endif  // MEMETIC_EXTPROTO_H_

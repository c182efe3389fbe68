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

#include "memetic/extproto.h"

#include <poll.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

#include "memetic/errors.h"
#include "memetic/landscapes.h"

namespace memetic::proto {

using nlohmann::json;
using nlohmann::ordered_json;

std::string quote_bytes(std::string_view bytes, std::size_t max) {
  std::string out = "\"";
  std::size_t shown = 0;
  for (unsigned char ch : bytes) {
    if (shown++ == max) {
      out += "...";
      break;
    }
    switch (ch) {
      case '\r': out += "\\r"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      default:
        if (ch < 0x20 || ch >= 0x7f) {
          char hex[8];
          std::snprintf(hex, sizeof hex, "\\x%02x", ch);
          out += hex;
        } else {
          out.push_back(static_cast<char>(ch));
        }
    }
  }
  out += "\"";
  return out;
}

json parse_line(std::string_view line) {
  if (line.empty()) throw SessionError("framing error: empty line");
  if (line.starts_with("\xEF\xBB\xBF")) {
    throw SessionError("framing error: byte order mark in line " +
                       quote_bytes(line));
  }
  if (line.find('\r') != std::string_view::npos) {
    throw SessionError("framing error: carriage return in line " +
                       quote_bytes(line));
  }
  std::istringstream in{std::string(line)};
  json value;
  try {
    in >> value;
  } catch (const json::exception&) {
    throw SessionError("malformed line, not JSON: " + quote_bytes(line));
  }
  in >> std::ws;
  if (in.peek() != std::char_traits<char>::eof()) {
    throw SessionError(
        "framing error: line holds more than one JSON value: " +
        quote_bytes(line));
  }
  if (!value.is_object()) {
    throw SessionError("malformed line, expected a JSON object: " +
                       quote_bytes(line));
  }
  return value;
}

std::string encode_hello(const SearchSpace& space) {
  ordered_json names = ordered_json::array();
  for (const auto& g : space.genes()) names.push_back(g.name);
  ordered_json hello;
  hello["hello"]["protocol"] = kProtocolVersion;
  hello["hello"]["genes"] = std::move(names);
  return hello.dump();
}

EvalRequest make_request(std::uint64_t id, const SearchSpace& space,
                         const Chromosome& c) {
  return {id, tokens_of(space, c)};
}

std::string encode_request(const EvalRequest& request) {
  ordered_json msg;
  msg["id"] = request.id;
  ordered_json genes = ordered_json::object();
  for (const auto& [name, token] : request.genes) genes[name] = token;
  msg["genes"] = std::move(genes);
  return msg.dump();
}

EvalResponse decode_response(std::string_view line) {
  const json msg = parse_line(line);
  const auto id = msg.find("id");
  if (id == msg.end() || !id->is_number_unsigned()) {
    throw SessionError("response without an unsigned integer id: " +
                       quote_bytes(line));
  }
  EvalResponse response;
  response.id = id->get<std::uint64_t>();
  const auto fitness = msg.find("fitness");
  const auto error = msg.find("error");
  if ((fitness != msg.end()) == (error != msg.end())) {
    throw SessionError(
        "response must carry exactly one of fitness or error: " +
        quote_bytes(line));
  }
  if (error != msg.end()) {
    if (!error->is_string()) {
      throw SessionError("response error is not a string: " + quote_bytes(line));
    }
    response.error = error->get<std::string>();
    return response;
  }
  if (!fitness->is_number()) {
    throw SessionError("response fitness is not a number: " + quote_bytes(line));
  }
  const double f = fitness->get<double>();
  if (!std::isfinite(f) || f < 0.0 || f > 1.0) {
    throw SessionError("response fitness out of [0,1]: " + quote_bytes(line));
  }
  response.fitness = f;
  return response;
}

int session_handshake(LineTransport& transport, const SearchSpace& space,
                      Deadline deadline) {
  transport.write_line(encode_hello(space), deadline);
  const std::string line = transport.read_line(deadline);
  json reply;
  try {
    reply = parse_line(line);
  } catch (const SessionError& e) {
    throw SessionError(std::string("malformed handshake reply: ") + e.what());
  }
  const auto ready = reply.find("ready");
  if (ready == reply.end() || !ready->is_object()) {
    throw SessionError("malformed handshake reply, expected ready: " +
                       quote_bytes(line));
  }
  const auto version = ready->find("protocol");
  if (version == ready->end() || !version->is_number_integer()) {
    throw SessionError("malformed handshake reply, no protocol version: " +
                       quote_bytes(line));
  }
  const int v = version->get<int>();
  if (v != kProtocolVersion) {
    throw SessionError("protocol mismatch: evaluator speaks " +
                       std::to_string(v) + ", client speaks " +
                       std::to_string(kProtocolVersion));
  }
  return v;
}

// --- session --------------------------------------------------------------

EvaluatorSession::EvaluatorSession(SearchSpace space,
                                   std::unique_ptr<LineTransport> transport,
                                   const SessionOptions& options)
    : space_(std::move(space)),
      transport_(std::move(transport)),
      options_(options) {
  version_ = session_handshake(*transport_, space_,
                               Clock::now() + options_.handshake_timeout);
}

std::unique_ptr<EvaluatorSession> EvaluatorSession::spawn(
    SearchSpace space, const SessionOptions& options) {
  if (options.command.empty()) {
    throw ConfigError("external evaluator command is empty");
  }
  auto transport = std::make_unique<Subprocess>(options.command, options.stderr_fd);
  return std::make_unique<EvaluatorSession>(std::move(space),
                                            std::move(transport), options);
}

EvalOutcome EvaluatorSession::evaluate(const Chromosome& c) {
  return evaluate_batch(std::span<const Chromosome>(&c, 1)).front();
}

std::vector<EvalOutcome> EvaluatorSession::evaluate_batch(
    std::span<const Chromosome> batch) {
  const std::size_t window = std::max<std::size_t>(1, options_.window);
  std::vector<EvalOutcome> results(batch.size());
  std::map<std::uint64_t, std::size_t> outstanding;
  std::size_t sent = 0;
  std::size_t done = 0;
  while (done < batch.size()) {
    while (sent < batch.size() && outstanding.size() < window) {
      const std::uint64_t id = next_id_++;
      const auto line = encode_request(make_request(id, space_, batch[sent]));
      transport_->write_line(line, Clock::now() + options_.request_timeout);
      outstanding.emplace(id, sent++);
    }
    const std::string line =
        transport_->read_line(Clock::now() + options_.request_timeout);
    const EvalResponse response = decode_response(line);
    const auto it = outstanding.find(response.id);
    if (it == outstanding.end()) {
      if (outstanding.size() == 1) {
        throw SessionError("id mismatch: expected " +
                           std::to_string(outstanding.begin()->first) +
                           ", got " + std::to_string(response.id));
      }
      throw SessionError("id mismatch: no outstanding request with id " +
                         std::to_string(response.id));
    }
    if (it != outstanding.begin()) ++out_of_order_;
    auto& slot = results[it->second];
    if (response.fitness) {
      slot.fitness = response.fitness;
    } else {
      slot.error = *response.error;
    }
    outstanding.erase(it);
    ++done;
  }
  return results;
}

// --- external evaluator ---------------------------------------------------

ExternalEvaluator::ExternalEvaluator(std::unique_ptr<EvaluatorSession> session,
                                     OnError on_error, bool deterministic)
    : session_(std::move(session)),
      on_error_(on_error),
      deterministic_(deterministic) {}

double ExternalEvaluator::resolve(const Chromosome& c,
                                  const EvalOutcome& outcome) {
  if (outcome.ok()) return *outcome.fitness;
  std::string genes;
  for (const auto& [name, token] : tokens_of(session_->space(), c)) {
    if (!genes.empty()) genes += ",";
    genes += name + "=" + token;
  }
  if (on_error_ == OnError::kZero) {
    std::cerr << "warning: evaluator error for {" << genes << "}: "
              << outcome.error << "; scoring 0.0\n";
    return 0.0;
  }
  throw EvaluationError("evaluator error for {" + genes + "}: " + outcome.error);
}

double ExternalEvaluator::evaluate(const Chromosome& c) {
  return resolve(c, session_->evaluate(c));
}

std::vector<double> ExternalEvaluator::evaluate_many(
    std::span<const Chromosome> batch) {
  const auto outcomes = session_->evaluate_batch(batch);
  std::vector<double> out;
  out.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    out.push_back(resolve(batch[i], outcomes[i]));
  }
  return out;
}

// --- reference echo evaluator ---------------------------------------------

namespace {

constexpr std::pair<EchoFault, const char*> kFaultNames[] = {
    {EchoFault::kNone, "none"},
    {EchoFault::kReorder, "reorder"},
    {EchoFault::kTwoPerLine, "two-per-line"},
    {EchoFault::kBadJson, "bad-json"},
    {EchoFault::kWrongId, "wrong-id"},
    {EchoFault::kBadHello, "bad-hello"},
    {EchoFault::kVersion2, "version2"},
    {EchoFault::kOutOfRange, "out-of-range"},
    {EchoFault::kErrorResponse, "error-response"},
    {EchoFault::kCrash, "crash"},
    {EchoFault::kCrlf, "crlf"},
    {EchoFault::kSilent, "silent"},
};

class FdLines {
 public:
  enum class Status { kLine, kTimeout, kEof };

  explicit FdLines(int fd) : fd_(fd) {}

  // timeout_ms < 0 blocks.
  Status next(std::string& line, int timeout_ms) {
    for (;;) {
      if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
        line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return Status::kLine;
      }
      if (eof_) return Status::kEof;
      pollfd p{fd_, POLLIN, 0};
      const int ready = ::poll(&p, 1, timeout_ms);
      if (ready < 0 && errno == EINTR) continue;
      if (ready == 0) return Status::kTimeout;
      char chunk[65536];
      const ssize_t n = ::read(fd_, chunk, sizeof chunk);
      if (n > 0) {
        buffer_.append(chunk, static_cast<std::size_t>(n));
      } else if (n == 0 || (errno != EINTR && errno != EAGAIN)) {
        eof_ = true;
      }
    }
  }

 private:
  int fd_;
  bool eof_ = false;
  std::string buffer_;
};

bool write_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::write(fd, data.data() + sent, data.size() - sent);
    if (n < 0) {
      if (errno == EINTR) continue;
      if (errno == EAGAIN) {
        pollfd p{fd, POLLOUT, 0};
        ::poll(&p, 1, -1);
        continue;
      }
      return false;
    }
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

class EchoServer {
 public:
  EchoServer(const EchoOptions& options, int out_fd)
      : options_(options), out_fd_(out_fd) {}

  bool send(const std::string& line) {
    const char* end = options_.fault == EchoFault::kCrlf ? "\r\n" : "\n";
    return write_all(out_fd_, line + end);
  }

  // Empty optional means the request was unparseable and the process
  // should exit.
  std::optional<std::string> respond(const std::string& line) {
    json request;
    try {
      request = json::parse(line);
    } catch (const json::exception&) {
      std::cerr << "echo evaluator: malformed request "
                << quote_bytes(line) << "\n";
      return std::nullopt;
    }
    if (!request.is_object() || !request.contains("id") ||
        !request["id"].is_number_unsigned()) {
      std::cerr << "echo evaluator: request without id " << quote_bytes(line)
                << "\n";
      return std::nullopt;
    }
    const auto id = request["id"].get<std::uint64_t>();
    ordered_json reply;
    reply["id"] = options_.fault == EchoFault::kWrongId ? id + 1 : id;

    std::string problem;
    Chromosome c;
    const auto genes = request.find("genes");
    if (genes == request.end() || !genes->is_object()) {
      problem = "request has no genes object";
    } else {
      for (const auto& g : options_.space.genes()) {
        const auto token = genes->find(g.name);
        if (token == genes->end() || !token->is_string()) {
          problem = "missing gene " + g.name;
          break;
        }
        const auto pos = std::find(g.domain.begin(), g.domain.end(),
                                   token->get<std::string>());
        if (pos == g.domain.end()) {
          problem = "unknown token for " + g.name + ": " +
                    token->get<std::string>();
          break;
        }
        c.alleles.push_back(static_cast<Allele>(pos - g.domain.begin()));
      }
    }
    if (options_.fault == EchoFault::kErrorResponse) problem = "OOM";

    if (!problem.empty()) {
      reply["error"] = problem;
    } else if (options_.fault == EchoFault::kOutOfRange) {
      reply["fitness"] = 1.5;
    } else {
      reply["fitness"] = HashedLandscape::fitness_of(options_.seed, c);
    }
    if (options_.pad > 0) reply["pad"] = std::string(options_.pad, 'x');

    std::string out = reply.dump();
    if (options_.fault == EchoFault::kTwoPerLine) out += out;
    if (options_.fault == EchoFault::kBadJson) out = "{id: " + std::to_string(id);
    return out;
  }

 private:
  const EchoOptions& options_;
  int out_fd_;
};

}  // namespace

const char* to_string(EchoFault fault) {
  for (const auto& [f, name] : kFaultNames) {
    if (f == fault) return name;
  }
  return "none";
}

EchoFault parse_echo_fault(std::string_view name) {
  for (const auto& [f, n] : kFaultNames) {
    if (name == n) return f;
  }
  throw ConfigError("unknown echo fault '" + std::string(name) + "'");
}

int serve_echo(const EchoOptions& options, int in_fd, int out_fd) {
  FdLines input(in_fd);
  EchoServer server(options, out_fd);
  std::string line;
  if (input.next(line, -1) != FdLines::Status::kLine) return 0;
  try {
    const json hello = json::parse(line);
    if (!hello.contains("hello")) throw std::runtime_error("no hello");
  } catch (const std::exception&) {
    std::cerr << "echo evaluator: malformed hello " << quote_bytes(line) << "\n";
    return 2;
  }
  switch (options.fault) {
    case EchoFault::kBadHello:
      server.send("ready, protocol one");
      break;
    case EchoFault::kVersion2:
      server.send(R"({"ready":{"protocol":2}})");
      break;
    default:
      // Responses carry a CR under kCrlf; the handshake stays clean.
      write_all(out_fd, std::string(R"({"ready":{"protocol":1}})") + "\n");
  }

  for (;;) {
    if (input.next(line, -1) != FdLines::Status::kLine) return 0;
    if (options.fault == EchoFault::kCrash) return 3;
    if (options.fault == EchoFault::kSilent) continue;

    std::vector<std::string> burst{line};
    if (options.fault == EchoFault::kReorder) {
      // Collect whatever else is already queued, then answer newest first.
      while (input.next(line, 50) == FdLines::Status::kLine) {
        burst.push_back(line);
      }
      std::reverse(burst.begin(), burst.end());
    }
    for (const auto& request : burst) {
      const auto reply = server.respond(request);
      if (!reply) return 2;
      if (!server.send(*reply)) return 0;
    }
  }
}

// --- selftest -------------------------------------------------------------

SelftestReport echo_evaluator_selftest(const SelftestOptions& options) {
  SelftestReport report;
  auto fail = [&](const std::string& what) {
    report.ok = false;
    report.lines.push_back("FAIL " + what);
    return report;
  };
  try {
    require_valid_space(options.space);
    SessionOptions session_options;
    session_options.command = options.command;
    session_options.handshake_timeout = options.timeout;
    session_options.request_timeout = options.timeout;
    auto session = EvaluatorSession::spawn(options.space, session_options);
    report.lines.push_back("ok handshake: protocol " +
                           std::to_string(session->protocol_version()));

    Rng rng(options.request_seed);
    auto check = [&](const Chromosome& c, const EvalOutcome& outcome,
                     std::string& problem) {
      if (!outcome.ok()) {
        problem = "evaluator returned error: " + outcome.error;
        return false;
      }
      if (options.verify_seed) {
        const double expected =
            HashedLandscape::fitness_of(*options.verify_seed, c);
        if (*outcome.fitness != expected) {
          std::ostringstream os;
          os.precision(17);
          os << "fitness mismatch: got " << *outcome.fitness << ", expected "
             << expected;
          problem = os.str();
          return false;
        }
      }
      return true;
    };

    std::string problem;
    for (std::size_t i = 0; i < options.sequential_requests; ++i) {
      const auto c = random_chromosome(options.space, rng);
      if (!check(c, session->evaluate(c), problem)) {
        return fail("sequential request " + std::to_string(i + 1) + ": " +
                    problem);
      }
    }
    report.lines.push_back("ok sequential: " +
                           std::to_string(options.sequential_requests) +
                           " requests, ids matched");

    if (options.pipelined_requests > 0) {
      std::vector<Chromosome> batch;
      for (std::size_t i = 0; i < options.pipelined_requests; ++i) {
        batch.push_back(random_chromosome(options.space, rng));
      }
      session->set_window(batch.size());
      const auto outcomes = session->evaluate_batch(batch);
      for (std::size_t i = 0; i < batch.size(); ++i) {
        if (!check(batch[i], outcomes[i], problem)) {
          return fail("pipelined request " + std::to_string(i + 1) + ": " +
                      problem);
        }
      }
      report.out_of_order = session->out_of_order_responses();
      report.lines.push_back(
          "ok pipelined: " + std::to_string(batch.size()) +
          " requests in flight, " + std::to_string(report.out_of_order) +
          " answered out of order");
    }
    report.ok = true;
  } catch (const SessionError& e) {
    return fail(e.what());
  } catch (const ConfigError& e) {
    return fail(e.what());
  }
  return report;
}


const std::vector<ConformanceFixture>& conformance_fixtures() {
  static const std::vector<ConformanceFixture> fixtures{
      {EchoFault::kNone, true, ""},
      {EchoFault::kReorder, true, ""},
      {EchoFault::kTwoPerLine, false, "more than one JSON value"},
      {EchoFault::kCrlf, false, "carriage return"},
      {EchoFault::kBadJson, false, "not JSON"},
      {EchoFault::kWrongId, false, "id mismatch"},
      {EchoFault::kBadHello, false, "malformed handshake reply"},
      {EchoFault::kVersion2, false, "protocol mismatch"},
      {EchoFault::kOutOfRange, false, "out of [0,1]"},
      {EchoFault::kErrorResponse, false, "OOM"},
      {EchoFault::kCrash, false, "closed its output"},
      {EchoFault::kSilent, false, "timeout waiting for evaluator"},
  };
  return fixtures;
}

SelftestReport run_conformance_fixtures(const std::string& echo_command,
                                        const SearchSpace& space,
                                        std::chrono::milliseconds timeout) {
  SelftestReport suite;
  suite.ok = true;
  for (const auto& fixture : conformance_fixtures()) {
    SelftestOptions options;
    options.command = echo_command + " --fault " + to_string(fixture.fault);
    options.space = space;
    options.timeout = fixture.fault == EchoFault::kSilent
                          ? std::min(timeout, std::chrono::milliseconds(1000))
                          : timeout;
    if (fixture.fault == EchoFault::kNone) options.verify_seed = 0;
    const auto report = echo_evaluator_selftest(options);
    const std::string last = report.lines.empty() ? "" : report.lines.back();
    std::string verdict;
    bool good;
    if (fixture.should_pass) {
      good = report.ok &&
             (fixture.fault != EchoFault::kReorder || report.out_of_order > 0);
      verdict = good ? "accepted" : "expected success, got: " + last;
      if (fixture.fault == EchoFault::kReorder && report.ok) {
        verdict += " (" + std::to_string(report.out_of_order) +
                   " out-of-order responses matched by id)";
      }
    } else {
      good = !report.ok && last.find(fixture.expected_error) != std::string::npos;
      verdict = good ? "rejected: " + last.substr(5)
                     : "expected rejection mentioning '" +
                           fixture.expected_error + "', got: " + last;
    }
    suite.ok = suite.ok && good;
    suite.out_of_order += report.out_of_order;
    suite.lines.push_back(std::string(good ? "ok" : "FAIL") + " fixture " +
                          to_string(fixture.fault) + ": " + verdict);
  }
  return suite;
}

}  // namespace memetic::proto

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

#include "memetic/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "memetic/errors.h"

namespace memetic {

using nlohmann::json;

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGa: return "ga";
    case Algorithm::kHc: return "hc";
    case Algorithm::kHybrid: break;
  }
  return "hybrid";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "hybrid") return Algorithm::kHybrid;
  if (name == "ga") return Algorithm::kGa;
  if (name == "hc") return Algorithm::kHc;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected hybrid, ga or hc)");
}

HcBudget effective_hc_budget(const RunConfig& config) {
  return config.hc_budget ? *config.hc_budget : default_hc_budget(config.space);
}

double effective_mutation_rate(const RunConfig& config) {
  if (config.ga_mutation_rate) return *config.ga_mutation_rate;
  return config.space.gene_count() == 0
             ? 0.0
             : 1.0 / static_cast<double>(config.space.gene_count());
}

void validate_config(const RunConfig& c) {
  require_valid_space(c.space);
  if (c.population_size < 3) {
    throw ConfigError("population_size must be at least 3, got " +
                      std::to_string(c.population_size));
  }
  if (c.max_generations < 1) {
    throw ConfigError("max_generations must be at least 1");
  }
  if (!(c.fitness_threshold >= 0.0 && c.fitness_threshold <= 1.0)) {
    throw ConfigError("fitness_threshold must be in [0, 1]");
  }
  if (c.hc_budget && c.hc_budget->max_evaluations < 1) {
    throw ConfigError("hill_climbing.budget must be at least 1");
  }
  if (c.ga_mutation_rate &&
      !(*c.ga_mutation_rate >= 0.0 && *c.ga_mutation_rate <= 1.0)) {
    throw ConfigError("ga_mutation_rate must be in [0, 1]");
  }
  if (c.crossover == CrossoverMode::kOnePoint && c.space.gene_count() < 2) {
    throw ConfigError("one_point crossover needs at least 2 genes");
  }
  if (c.max_evaluations != 0 && c.max_evaluations < c.population_size) {
    throw ConfigError("max_evaluations must cover the initial population");
  }
  if (c.bench.repetitions < 2) {
    throw ConfigError("bench.repetitions must be at least 2");
  }
  const auto& e = c.evaluator;
  if (e.target && !is_valid_for(c.space, *e.target)) {
    throw ConfigError("evaluator.target does not fit the space");
  }
  if (e.trap && !is_valid_for(c.space, *e.trap)) {
    throw ConfigError("evaluator.trap does not fit the space");
  }
  if (e.kind == EvaluatorSpec::Kind::kExternal && e.session.command.empty()) {
    throw ConfigError("evaluator.command is required for external evaluators");
  }
}

namespace {

// Walks a JSON object, tracking the pointer path for error messages and
// rejecting keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at " + (path.empty() ? "/" : path) + ": " +
                      what);
  }

  std::string child_path(std::string_view key) const {
    return path_ + "/" + std::string(key);
  }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  template <typename T>
  bool read_unsigned(std::string_view key, T& out) {
    const json* v = find(key);
    if (!v) return false;
    if (!v->is_number_unsigned()) {
      fail(child_path(key), "expected a non-negative integer");
    }
    out = v->get<T>();
    return true;
  }

  bool read_number(std::string_view key, double& out) {
    const json* v = find(key);
    if (!v) return false;
    if (!v->is_number()) fail(child_path(key), "expected a number");
    out = v->get<double>();
    return true;
  }

  bool read_bool(std::string_view key, bool& out) {
    const json* v = find(key);
    if (!v) return false;
    if (!v->is_boolean()) fail(child_path(key), "expected true or false");
    out = v->get<bool>();
    return true;
  }

  bool read_string(std::string_view key, std::string& out) {
    const json* v = find(key);
    if (!v) return false;
    if (!v->is_string()) fail(child_path(key), "expected a string");
    out = v->get<std::string>();
    return true;
  }

  // Runs `parse` on the string at key, relocating ConfigErrors to the key.
  template <typename F>
  void read_enum(std::string_view key, F&& parse) {
    std::string s;
    if (!read_string(key, s)) return;
    try {
      parse(s);
    } catch (const ConfigError& e) {
      fail(child_path(key), e.what());
    }
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.contains(key)) fail(child_path(key), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

SearchSpace parse_space(const json& node, const std::string& path) {
  if (node.is_string()) {
    if (node.get<std::string>() == "default_cnn") return default_cnn_space();
    ObjectReader::fail(path, "unknown space '" + node.get<std::string>() +
                                 "' (expected default_cnn or an object)");
  }
  ObjectReader space(node, path);
  const json* genes = space.find("genes");
  if (!genes || !genes->is_array()) {
    ObjectReader::fail(space.child_path("genes"), "expected an array of genes");
  }
  std::vector<GeneSpec> out;
  for (std::size_t i = 0; i < genes->size(); ++i) {
    const std::string gpath = path + "/genes/" + std::to_string(i);
    ObjectReader g((*genes)[i], gpath);
    GeneSpec spec;
    if (!g.read_string("name", spec.name)) {
      ObjectReader::fail(gpath + "/name", "missing gene name");
    }
    g.read_enum("kind", [&](const std::string& k) {
      if (k == "ordinal") {
        spec.kind = GeneKind::kOrdinal;
      } else if (k == "categorical") {
        spec.kind = GeneKind::kCategorical;
      } else {
        throw ConfigError("unknown gene kind '" + k + "'");
      }
    });
    const json* values = g.find("values");
    if (!values || !values->is_array()) {
      ObjectReader::fail(gpath + "/values", "expected an array of value tokens");
    }
    for (std::size_t v = 0; v < values->size(); ++v) {
      if (!(*values)[v].is_string()) {
        ObjectReader::fail(gpath + "/values/" + std::to_string(v),
                           "value tokens must be strings (write \"0.3\", not 0.3)");
      }
      spec.domain.push_back((*values)[v].get<std::string>());
    }
    g.finish();
    out.push_back(std::move(spec));
  }
  space.finish();
  SearchSpace result(std::move(out));
  const auto errors = validate_space(result);
  if (!errors.empty()) ObjectReader::fail(path, errors.front());
  return result;
}

Chromosome parse_alleles(const json* node, const std::string& path) {
  if (!node->is_array()) ObjectReader::fail(path, "expected an array of indices");
  Chromosome c;
  for (const auto& v : *node) {
    if (!v.is_number_unsigned()) {
      ObjectReader::fail(path, "expected non-negative integer indices");
    }
    c.alleles.push_back(v.get<Allele>());
  }
  return c;
}

EvaluatorSpec parse_evaluator(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  EvaluatorSpec spec;
  std::string type = "hashed";
  r.read_string("type", type);
  if (type == "hashed") {
    spec.kind = EvaluatorSpec::Kind::kHashed;
    r.read_unsigned("seed", spec.seed);
  } else if (type == "separable") {
    spec.kind = EvaluatorSpec::Kind::kSeparable;
    r.read_unsigned("seed", spec.seed);
    if (const json* w = r.find("weights")) {
      try {
        spec.weights = w->get<std::vector<std::vector<double>>>();
      } catch (const json::exception&) {
        ObjectReader::fail(r.child_path("weights"),
                           "expected an array of number arrays");
      }
    }
  } else if (type == "trap") {
    spec.kind = EvaluatorSpec::Kind::kTrap;
    if (const json* t = r.find("target")) {
      spec.target = parse_alleles(t, r.child_path("target"));
    }
    if (const json* t = r.find("trap")) {
      spec.trap = parse_alleles(t, r.child_path("trap"));
    }
    r.read_number("trap_value", spec.trap_params.trap_value);
    r.read_number("slope", spec.trap_params.slope);
  } else if (type == "external") {
    spec.kind = EvaluatorSpec::Kind::kExternal;
    if (!r.read_string("command", spec.session.command)) {
      ObjectReader::fail(r.child_path("command"), "missing evaluator command");
    }
    double seconds = 0;
    if (r.read_number("handshake_timeout_seconds", seconds)) {
      spec.session.handshake_timeout =
          std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000));
    }
    if (r.read_number("request_timeout_seconds", seconds)) {
      spec.session.request_timeout =
          std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000));
    }
    r.read_unsigned("window", spec.session.window);
    r.read_enum("on_error", [&](const std::string& s) {
      if (s == "fail") {
        spec.on_error = proto::OnError::kFail;
      } else if (s == "zero") {
        spec.on_error = proto::OnError::kZero;
      } else {
        throw ConfigError("expected fail or zero");
      }
    });
    r.read_bool("deterministic", spec.deterministic);
  } else {
    ObjectReader::fail(r.child_path("type"),
                       "unknown evaluator type '" + type +
                           "' (expected hashed, separable, trap or external)");
  }
  r.finish();
  return spec;
}

BenchSettings parse_bench(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  BenchSettings b;
  r.read_unsigned("repetitions", b.repetitions);
  std::uint64_t base = 0;
  if (r.read_unsigned("seed_base", base)) b.seed_base = base;
  if (const json* algos = r.find("algorithms")) {
    if (!algos->is_array()) {
      ObjectReader::fail(r.child_path("algorithms"), "expected an array");
    }
    b.algorithms.clear();
    for (const auto& a : *algos) {
      if (!a.is_string()) {
        ObjectReader::fail(r.child_path("algorithms"), "expected strings");
      }
      try {
        b.algorithms.push_back(parse_algorithm(a.get<std::string>()));
      } catch (const ConfigError& e) {
        ObjectReader::fail(r.child_path("algorithms"), e.what());
      }
    }
  }
  if (const json* cps = r.find("checkpoints")) {
    try {
      b.checkpoints = cps->get<std::vector<std::size_t>>();
    } catch (const json::exception&) {
      ObjectReader::fail(r.child_path("checkpoints"),
                         "expected an array of generation numbers");
    }
  }
  r.finish();
  return b;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  ObjectReader r(doc, "");
  RunConfig c;
  r.read_enum("algorithm", [&](const std::string& s) { c.algorithm = parse_algorithm(s); });
  r.read_unsigned("population_size", c.population_size);
  r.read_unsigned("max_generations", c.max_generations);
  r.read_number("fitness_threshold", c.fitness_threshold);
  r.read_unsigned("seed", c.seed);
  r.read_enum("crossover", [&](const std::string& s) { c.crossover = parse_crossover_mode(s); });
  if (const json* hc = r.find("hill_climbing")) {
    ObjectReader h(*hc, "/hill_climbing");
    h.read_enum("strategy", [&](const std::string& s) { c.hc_strategy = parse_hc_strategy(s); });
    std::uint64_t budget = 0;
    if (h.read_unsigned("budget", budget)) c.hc_budget = HcBudget{budget};
    h.read_bool("apply_to_best", c.hc_apply_to_best);
    h.finish();
  }
  if (const json* rate = r.find("ga_mutation_rate"); rate && !rate->is_null()) {
    if (!rate->is_number()) {
      ObjectReader::fail("/ga_mutation_rate", "expected a number");
    }
    c.ga_mutation_rate = rate->get<double>();
  }
  r.read_unsigned("max_evaluations", c.max_evaluations);
  if (const json* space = r.find("space")) c.space = parse_space(*space, "/space");
  if (const json* ev = r.find("evaluator")) c.evaluator = parse_evaluator(*ev, "/evaluator");
  if (const json* bench = r.find("bench")) c.bench = parse_bench(*bench, "/bench");
  r.finish();
  validate_config(c);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + " at byte " +
                      std::to_string(e.byte) + ": " + e.what());
  }
  try {
    return parse_run_config(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::unique_ptr<FitnessEvaluator> make_evaluator(const RunConfig& config,
                                                 int stderr_fd) {
  const auto& e = config.evaluator;
  switch (e.kind) {
    case EvaluatorSpec::Kind::kHashed:
      return std::make_unique<HashedLandscape>(config.space, e.seed);
    case EvaluatorSpec::Kind::kSeparable:
      if (e.weights.empty()) {
        return std::make_unique<SeparableLandscape>(
            SeparableLandscape::from_seed(config.space, e.seed));
      }
      return std::make_unique<SeparableLandscape>(config.space, e.weights);
    case EvaluatorSpec::Kind::kTrap: {
      auto defaults = TrapLandscape::with_defaults(config.space, e.trap_params);
      return std::make_unique<TrapLandscape>(
          config.space, e.target.value_or(defaults.target()),
          e.trap.value_or(defaults.trap()), e.trap_params);
    }
    case EvaluatorSpec::Kind::kExternal: {
      auto options = e.session;
      options.stderr_fd = stderr_fd;
      return std::make_unique<proto::ExternalEvaluator>(
          proto::EvaluatorSession::spawn(config.space, options), e.on_error,
          e.deterministic);
    }
  }
  throw ConfigError("unsupported evaluator kind");
}

}  // namespace memetic

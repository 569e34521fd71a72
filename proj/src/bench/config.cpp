// Copyright 2026 The nestedvi Authors
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

#include <json.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "nestedvi/bench.hpp"
#include "nestedvi/error.hpp"
#include "nestedvi/serialization.hpp"

namespace nvi::bench {
namespace {

using json = nlohmann::json;

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid config";
  for (const auto& line : lines) out += "\n  " + line;
  return out;
}

// Collects diagnostics while walking a config document.
class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& message) {
    errors.push_back(path + ": " + message);
  }

  bool object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) fail(path.empty() ? key : path + "." + key, "unknown key");
    }
    return true;
  }

  std::optional<double> real(const json& j, const std::string& path) {
    if (!j.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    return j.get<double>();
  }

  std::optional<std::int64_t> integer(const json& j, const std::string& path, std::int64_t min) {
    if (!j.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    const auto v = j.get<std::int64_t>();
    if (v < min) {
      fail(path, fmt::format("must be >= {}", min));
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::uint64_t> seed(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) {
      fail(path, "expected a nonnegative integer seed");
      return std::nullopt;
    }
    return j.get<std::uint64_t>();
  }

  std::optional<std::string> string(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail(path, "expected a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  std::optional<std::string> type_tag(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("type")) {
      fail(path + ".type", "required");
      return std::nullopt;
    }
    return string(j.at("type"), path + ".type");
  }

  // Runs a constructor that validates its arguments and converts its
  // InputError into a diagnostic.
  template <class Fn>
  void guarded(const std::string& path, Fn&& fn) {
    try {
      fn();
    } catch (const InputError& e) {
      fail(path, e.what());
    }
  }
};

template <class T>
void read_real(Reader& r, const json& j, const char* key, const std::string& path, T& target) {
  if (!j.contains(key)) return;
  if (auto v = r.real(j.at(key), path + "." + key)) target = *v;
}

void read_problem(Reader& r, const json& j, RunConfig& cfg) {
  const std::string path = "problem";
  const auto type = r.type_tag(j, path);
  if (!type) return;
  if (*type == "rotation2d") {
    r.object(j, path, {"type"});
    cfg.problem = Rotation2dSpec{};
  } else if (*type == "random") {
    r.object(j, path, {"type", "n", "zeta", "seed"});
    RandomFamilySpec spec;
    if (j.contains("n"))
      if (auto n = r.integer(j.at("n"), path + ".n", 2)) {
        if (*n % 2 != 0) r.fail(path + ".n", "must be even");
        spec.n = *n;
      }
    read_real(r, j, "zeta", path, spec.zeta);
    if (!(spec.zeta >= 0.0)) r.fail(path + ".zeta", "must be nonnegative");
    if (j.contains("seed"))
      if (auto s = r.seed(j.at("seed"), path + ".seed")) spec.seed = *s;
    cfg.problem = spec;
  } else if (*type == "inline") {
    r.object(j, path, {"type", "definition"});
    if (!j.contains("definition")) {
      r.fail(path + ".definition", "required");
      return;
    }
    InlineProblemSpec spec{j.at("definition").dump()};
    r.guarded(path + ".definition", [&] { problem_from_json(spec.json); });
    cfg.problem = spec;
  } else {
    r.fail(path + ".type", "expected rotation2d, random or inline");
  }
}

void read_step(Reader& r, const json& j, RunConfig& cfg) {
  const std::string path = "step";
  const auto type = r.type_tag(j, path);
  if (!type) return;
  if (*type == "power") {
    r.object(j, path, {"type", "a", "alpha"});
    PowerStep s{0.5, 0.5};
    read_real(r, j, "a", path, s.a);
    read_real(r, j, "alpha", path, s.alpha);
    r.guarded(path, [&] { cfg.solver.step = StepSizeRule(s); });
  } else if (*type == "recursive") {
    r.object(j, path, {"type", "gamma0", "theta"});
    RecursiveStep s{1.0, 0.5};
    read_real(r, j, "gamma0", path, s.gamma0);
    read_real(r, j, "theta", path, s.theta);
    r.guarded(path, [&] { cfg.solver.step = StepSizeRule(s); });
  } else {
    r.fail(path + ".type", "expected power or recursive");
  }
}

void read_tikhonov(Reader& r, const json& j, RunConfig& cfg) {
  const std::string path = "tikhonov";
  const auto type = r.type_tag(j, path);
  if (!type) return;
  if (*type == "theorem2") {
    r.object(j, path, {"type"});
    cfg.solver.tikhonov = Theorem2Schedule{};
  } else if (*type == "powerlaw") {
    r.object(j, path, {"type", "slope", "c", "beta"});
    PowerLawSchedule s;
    read_real(r, j, "slope", path, s.slope);
    read_real(r, j, "c", path, s.c);
    read_real(r, j, "beta", path, s.beta);
    r.guarded(path, [&] { cfg.solver.tikhonov = TikhonovSchedule(s); });
  } else if (*type == "theorem3") {
    r.object(j, path, {"type", "delta"});
    Theorem3Schedule s{0.1};
    read_real(r, j, "delta", path, s.delta);
    r.guarded(path, [&] { cfg.solver.tikhonov = TikhonovSchedule(s); });
  } else {
    r.fail(path + ".type", "expected theorem2, powerlaw or theorem3");
  }
}

void read_initial(Reader& r, const json& j, RunConfig& cfg) {
  const std::string path = "initial";
  const auto type = r.type_tag(j, path);
  if (!type) return;
  if (*type == "boundary_random") {
    r.object(j, path, {"type", "seed"});
    BoundaryRandom b;
    if (j.contains("seed"))
      if (auto s = r.seed(j.at("seed"), path + ".seed")) b.seed = *s;
    cfg.solver.initial = b;
  } else if (*type == "point") {
    r.object(j, path, {"type", "value"});
    if (!j.contains("value") || !j.at("value").is_array() || j.at("value").empty()) {
      r.fail(path + ".value", "expected a nonempty array of numbers");
      return;
    }
    const json& arr = j.at("value");
    Vector v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t c = 0; c < arr.size(); ++c) {
      auto x = r.real(arr[c], fmt::format("{}.value[{}]", path, c));
      v(static_cast<Eigen::Index>(c)) = x.value_or(0.0);
    }
    cfg.solver.initial = v;
  } else {
    r.fail(path + ".type", "expected boundary_random or point");
  }
}

void read_sweep(Reader& r, const json& j, RunConfig& cfg) {
  const std::string path = "sweep";
  if (!r.object(j, path, {"seeds", "zetas", "n"})) return;
  if (j.contains("seeds")) {
    const json& arr = j.at("seeds");
    if (!arr.is_array() || arr.empty()) {
      r.fail(path + ".seeds", "expected a nonempty array");
    } else {
      cfg.sweep.seeds.clear();
      for (std::size_t c = 0; c < arr.size(); ++c)
        if (auto s = r.seed(arr[c], fmt::format("{}.seeds[{}]", path, c))) cfg.sweep.seeds.push_back(*s);
    }
  }
  if (j.contains("zetas")) {
    const json& arr = j.at("zetas");
    if (!arr.is_array() || arr.empty()) {
      r.fail(path + ".zetas", "expected a nonempty array");
    } else {
      cfg.sweep.zetas.clear();
      for (std::size_t c = 0; c < arr.size(); ++c) {
        const std::string p = fmt::format("{}.zetas[{}]", path, c);
        if (auto z = r.real(arr[c], p)) {
          if (!(*z >= 0.0) || !std::isfinite(*z)) r.fail(p, "must be nonnegative and finite");
          cfg.sweep.zetas.push_back(*z);
        }
      }
    }
  }
  if (j.contains("n"))
    if (auto n = r.integer(j.at("n"), path + ".n", 2)) {
      if (*n % 2 != 0) r.fail(path + ".n", "must be even");
      cfg.sweep.n = *n;
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::invalid_argument(join_lines(diagnostics)), diagnostics_(std::move(diagnostics)) {}

RunConfig table1_defaults() {
  RunConfig cfg;
  cfg.problem = Rotation2dSpec{};
  cfg.solver.step = PowerStep{0.5, 0.5};
  cfg.solver.tikhonov = PowerLawSchedule{1.0, 1.0, 2.0};
  cfg.solver.k_max = 1'000'000;
  cfg.solver.tol = 1e-3;
  cfg.output = "nvi_table1";
  return cfg;
}

RunConfig compare_defaults() {
  RunConfig cfg;
  cfg.solver.step = PowerStep{1.0, 0.25};
  cfg.solver.tikhonov = PowerLawSchedule{1.0, 1.0, 2.0};
  cfg.solver.k_max = 50'000;
  cfg.solver.tol = 1e-12;
  cfg.solver.lambda = 0.1;
  cfg.output = "nvi_compare";
  return cfg;
}

RunConfig parse_run_config(const std::string& text, RunConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("json: ") + e.what()});
  }
  Reader r;
  RunConfig& cfg = base;
  if (!r.object(j, "", {"problem", "solver", "step", "tikhonov", "k_max", "tol", "initial",
                        "check_every", "normalize_maps", "index_offset", "record_limit", "lambda",
                        "output", "sweep", "jobs"}))
    throw ConfigError(r.errors);

  if (j.contains("problem")) read_problem(r, j.at("problem"), cfg);
  if (j.contains("solver"))
    if (auto s = r.string(j.at("solver"), "solver")) {
      if (*s == "pata") cfg.solver.kind = SolverKind::kPata;
      else if (*s == "pata_certificate") cfg.solver.kind = SolverKind::kPataCertificate;
      else if (*s == "baseline") cfg.solver.kind = SolverKind::kBaseline;
      else r.fail("solver", "expected pata, pata_certificate or baseline");
    }
  if (j.contains("step")) read_step(r, j.at("step"), cfg);
  if (j.contains("tikhonov")) read_tikhonov(r, j.at("tikhonov"), cfg);
  if (j.contains("k_max"))
    if (auto v = r.integer(j.at("k_max"), "k_max", 1)) cfg.solver.k_max = *v;
  if (j.contains("tol"))
    if (auto v = r.real(j.at("tol"), "tol")) {
      if (!(*v > 0.0)) r.fail("tol", "must be positive");
      cfg.solver.tol = *v;
    }
  if (j.contains("initial")) read_initial(r, j.at("initial"), cfg);
  if (j.contains("check_every"))
    if (auto v = r.integer(j.at("check_every"), "check_every", 1)) cfg.solver.check_every = *v;
  if (j.contains("normalize_maps")) {
    if (j.at("normalize_maps").is_boolean()) cfg.solver.normalize_maps = j.at("normalize_maps").get<bool>();
    else r.fail("normalize_maps", "expected a boolean");
  }
  if (j.contains("index_offset"))
    if (auto v = r.integer(j.at("index_offset"), "index_offset", 0)) cfg.solver.index_offset = *v;
  if (j.contains("record_limit"))
    if (auto v = r.integer(j.at("record_limit"), "record_limit", 1)) cfg.solver.max_inner_records = *v;
  if (j.contains("lambda"))
    if (auto v = r.real(j.at("lambda"), "lambda")) {
      if (!(*v > 0.0)) r.fail("lambda", "must be positive");
      cfg.solver.lambda = *v;
    }
  if (j.contains("output"))
    if (auto v = r.string(j.at("output"), "output")) {
      if (v->empty()) r.fail("output", "must not be empty");
      cfg.output = *v;
    }
  if (j.contains("sweep")) read_sweep(r, j.at("sweep"), cfg);
  if (j.contains("jobs"))
    if (auto v = r.integer(j.at("jobs"), "jobs", 1)) cfg.jobs = static_cast<int>(std::min<std::int64_t>(*v, 1024));

  if (cfg.solver.kind == SolverKind::kPataCertificate && !cfg.solver.tikhonov.is_certificate())
    r.fail("tikhonov", "pata_certificate requires the theorem3 schedule");
  if (cfg.solver.kind != SolverKind::kPataCertificate && cfg.solver.tikhonov.is_certificate())
    r.fail("tikhonov", "the theorem3 schedule requires solver pata_certificate");

  if (!r.errors.empty()) throw ConfigError(r.errors);
  return cfg;
}

NestedVIProblem build_problem(const ProblemSpec& spec) {
  if (std::holds_alternative<Rotation2dSpec>(spec)) return rotation2d();
  if (const auto* random = std::get_if<RandomFamilySpec>(&spec)) return random_skew_rank_one(*random);
  return problem_from_json(std::get<InlineProblemSpec>(spec).json);
}

}  // namespace nvi::bench

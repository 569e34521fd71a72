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

#include "nestedvi/nestedvi.h"

#include <cstring>
#include <iostream>
#include <new>
#include <string>

#include "nestedvi/bench.hpp"
#include "nestedvi/core.hpp"
#include "nestedvi/error.hpp"
#include "nestedvi/merit.hpp"
#include "nestedvi/problems.hpp"
#include "nestedvi/serialization.hpp"
#include "nestedvi/solvers.hpp"

struct nvi_problem {
  nvi::NestedVIProblem problem;
};

struct nvi_config {
  nvi::SolverConfig config;
};

struct nvi_result {
  nvi::SolveResult result;
  bool failed = false;
};

namespace {

thread_local std::string last_error;

nvi_status fail(nvi_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs fn and converts exceptions into status codes and last_error.
template <class Fn>
nvi_status call(Fn&& fn) {
  try {
    fn();
    return NVI_OK;
  } catch (const nvi::bench::ConfigError& e) {
    return fail(NVI_ERR_CONFIG, e.what());
  } catch (const nvi::InputError& e) {
    return fail(NVI_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nvi::SolverError& e) {
    return fail(NVI_ERR_SOLVER, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NVI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NVI_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw nvi::InputError(message);
}

nvi::Vector as_vector(const double* x, std::size_t n, std::size_t expected) {
  require(x != nullptr, "null vector argument");
  require(n == expected, "vector length does not match the problem dimension");
  return Eigen::Map<const nvi::Vector>(x, static_cast<Eigen::Index>(n));
}

void copy_out(const nvi::Vector& v, double* out, std::size_t n) {
  require(out != nullptr, "null output buffer");
  require(n == static_cast<std::size_t>(v.size()), "output length does not match the vector size");
  std::memcpy(out, v.data(), n * sizeof(double));
}

nvi_record to_record(const nvi::IterationRecord& r) {
  return nvi_record{r.k, r.i, r.l, r.tau, r.epsilon, r.gamma, r.z_norm, r.gap, r.measure, r.v_residual,
                    r.outer_event ? 1 : 0};
}

nvi::bench::CommandOptions to_options(const nvi_bench_options* o) {
  nvi::bench::CommandOptions out;
  if (o == nullptr) return out;
  if (o->config_path != nullptr) out.config_path = o->config_path;
  if (o->out_dir != nullptr) out.out_dir = o->out_dir;
  if (o->has_seed) out.seed = o->seed;
  if (o->jobs != 0) out.jobs = o->jobs;
  out.quiet = o->quiet != 0;
  return out;
}

nvi_status make_problem(nvi_problem** out, nvi::NestedVIProblem (*build)(const void*), const void* arg) {
  return call([&] {
    require(out != nullptr, "null output handle");
    *out = nullptr;
    *out = new nvi_problem{build(arg)};
  });
}

}  // namespace

extern "C" {

const char* nvi_last_error(void) { return last_error.c_str(); }

const char* nvi_version(void) { return "1.0.0"; }

nvi_status nvi_problem_rotation2d(nvi_problem** out) {
  return make_problem(out, [](const void*) { return nvi::rotation2d(); }, nullptr);
}

nvi_status nvi_problem_random(int64_t n, double zeta, uint64_t seed, nvi_problem** out) {
  const nvi::RandomFamilySpec spec{static_cast<Eigen::Index>(n), zeta, seed};
  return make_problem(
      out, [](const void* s) { return nvi::random_skew_rank_one(*static_cast<const nvi::RandomFamilySpec*>(s)); },
      &spec);
}

nvi_status nvi_problem_from_json(const char* json, nvi_problem** out) {
  if (json == nullptr) return fail(NVI_ERR_INVALID_ARGUMENT, "null json");
  return make_problem(out, [](const void* s) { return nvi::problem_from_json(static_cast<const char*>(s)); }, json);
}

nvi_status nvi_problem_to_json(const nvi_problem* problem, char* buffer, size_t capacity, size_t* needed) {
  std::string text;
  const nvi_status status = call([&] {
    require(problem != nullptr, "null problem");
    text = nvi::problem_to_json(problem->problem);
  });
  if (status != NVI_OK) return status;
  if (needed != nullptr) *needed = text.size() + 1;
  if (buffer == nullptr || capacity < text.size() + 1) {
    if (buffer != nullptr && capacity > 0) buffer[0] = '\0';
    return fail(NVI_ERR_BUFFER_TOO_SMALL, "buffer too small");
  }
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return NVI_OK;
}

void nvi_problem_free(nvi_problem* problem) { delete problem; }

nvi_status nvi_problem_dim(const nvi_problem* problem, size_t* n) {
  return call([&] {
    require(problem != nullptr && n != nullptr, "null argument");
    *n = static_cast<size_t>(problem->problem.dim());
  });
}

nvi_status nvi_problem_constants(const nvi_problem* problem, nvi_constants* out) {
  return call([&] {
    require(problem != nullptr && out != nullptr, "null argument");
    const auto& c = problem->problem.constants();
    *out = nvi_constants{c.H, c.R, c.D, c.L_F, c.L_G, problem->problem.upper_defect(),
                         problem->problem.lower_defect()};
  });
}

nvi_status nvi_problem_tikhonov(const nvi_problem* problem, double tau, const double* x, size_t n, double* out) {
  return call([&] {
    require(problem != nullptr, "null problem");
    require(tau > 0.0, "tau must be positive");
    const auto dim = static_cast<size_t>(problem->problem.dim());
    copy_out(nvi::tikhonov_map(problem->problem, tau, as_vector(x, n, dim)), out, n);
  });
}

nvi_status nvi_problem_project(const nvi_problem* problem, const double* x, size_t n, double* out) {
  return call([&] {
    require(problem != nullptr, "null problem");
    const auto dim = static_cast<size_t>(problem->problem.dim());
    copy_out(problem->problem.set().project(as_vector(x, n, dim)), out, n);
  });
}

nvi_status nvi_problem_gap(const nvi_problem* problem, double tau, const double* z, size_t n, double* gap) {
  return call([&] {
    require(problem != nullptr && gap != nullptr, "null argument");
    require(tau > 0.0, "tau must be positive");
    const auto dim = static_cast<size_t>(problem->problem.dim());
    *gap = nvi::subproblem_gap(problem->problem, tau, as_vector(z, n, dim));
  });
}

nvi_status nvi_problem_lower_residual(const nvi_problem* problem, const double* x, size_t n, double* residual) {
  return call([&] {
    require(problem != nullptr && residual != nullptr, "null argument");
    const auto dim = static_cast<size_t>(problem->problem.dim());
    *residual = nvi::lower_natural_residual(problem->problem, as_vector(x, n, dim));
  });
}

nvi_status nvi_config_default(nvi_config** out) {
  return call([&] {
    require(out != nullptr, "null output handle");
    *out = new nvi_config{};
  });
}

nvi_status nvi_config_from_json(const char* json, nvi_config** out) {
  return call([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new nvi_config{nvi::bench::parse_run_config(json).solver};
  });
}

void nvi_config_free(nvi_config* config) { delete config; }

nvi_status nvi_config_set_kind(nvi_config* config, nvi_solver_kind kind) {
  return call([&] {
    require(config != nullptr, "null config");
    switch (kind) {
      case NVI_SOLVER_PATA: config->config.kind = nvi::SolverKind::kPata; break;
      case NVI_SOLVER_PATA_CERTIFICATE: config->config.kind = nvi::SolverKind::kPataCertificate; break;
      case NVI_SOLVER_BASELINE: config->config.kind = nvi::SolverKind::kBaseline; break;
      default: throw nvi::InputError("unknown solver kind");
    }
  });
}

nvi_status nvi_config_set_k_max(nvi_config* config, int64_t k_max) {
  return call([&] {
    require(config != nullptr, "null config");
    require(k_max >= 1, "k_max must be >= 1");
    config->config.k_max = k_max;
  });
}

nvi_status nvi_config_set_tol(nvi_config* config, double tol) {
  return call([&] {
    require(config != nullptr, "null config");
    require(tol > 0.0, "tol must be positive");
    config->config.tol = tol;
  });
}

nvi_status nvi_config_set_seed(nvi_config* config, uint64_t seed) {
  return call([&] {
    require(config != nullptr, "null config");
    config->config.initial = nvi::BoundaryRandom{seed};
  });
}

nvi_status nvi_config_set_initial_point(nvi_config* config, const double* y0, size_t n) {
  return call([&] {
    require(config != nullptr && y0 != nullptr && n > 0, "invalid initial point");
    config->config.initial = nvi::Vector(Eigen::Map<const nvi::Vector>(y0, static_cast<Eigen::Index>(n)));
  });
}

nvi_status nvi_solve(const nvi_problem* problem, const nvi_config* config, nvi_observer observer,
                     void* user_data, nvi_result** out) {
  if (out != nullptr) *out = nullptr;
  return call([&] {
    require(problem != nullptr && config != nullptr && out != nullptr, "null argument");
    nvi::Observer obs;
    if (observer != nullptr)
      obs = [&](const nvi::IterationRecord& r, const nvi::IterationView& v) {
        const nvi_record rec = to_record(r);
        observer(&rec, v.y.data(), v.z.data(), static_cast<size_t>(v.y.size()), user_data);
      };
    try {
      *out = new nvi_result{nvi::solve(problem->problem, config->config, obs)};
    } catch (const nvi::SolverError& e) {
      auto* partial = new nvi_result{};
      partial->result.trace = e.trace();
      partial->failed = true;
      *out = partial;
      throw;
    }
  });
}

void nvi_result_free(nvi_result* result) { delete result; }

const char* nvi_result_termination(const nvi_result* result) {
  if (result == nullptr) return "";
  if (result->failed) return "solver_error";
  return nvi::to_string(result->result.termination);
}

int64_t nvi_result_outer_count(const nvi_result* result) {
  return result == nullptr ? -1 : result->result.outer_count;
}

int64_t nvi_result_iterations(const nvi_result* result) {
  return result == nullptr ? -1 : result->result.iterations;
}

size_t nvi_result_trace_size(const nvi_result* result) {
  return result == nullptr ? 0 : result->result.trace.size();
}

nvi_status nvi_result_trace_record(const nvi_result* result, size_t index, nvi_record* out) {
  return call([&] {
    require(result != nullptr && out != nullptr, "null argument");
    require(index < result->result.trace.size(), "trace index out of range");
    *out = to_record(result->result.trace[index]);
  });
}

nvi_status nvi_result_final_z(const nvi_result* result, double* out, size_t n) {
  return call([&] {
    require(result != nullptr, "null result");
    copy_out(result->result.final_z, out, n);
  });
}

nvi_status nvi_result_final_w(const nvi_result* result, double* out, size_t n) {
  return call([&] {
    require(result != nullptr, "null result");
    copy_out(result->result.final_w, out, n);
  });
}

nvi_status nvi_result_final_y(const nvi_result* result, double* out, size_t n) {
  return call([&] {
    require(result != nullptr, "null result");
    copy_out(result->result.final_y, out, n);
  });
}

nvi_status nvi_result_certificate(const nvi_result* result, int64_t* i_bar_max, double* sigma_bar,
                                  double* target, double* dual_gap_bound) {
  return call([&] {
    require(result != nullptr, "null result");
    require(result->result.certificate.has_value(), "result has no certificate");
    const auto& c = *result->result.certificate;
    if (i_bar_max != nullptr) *i_bar_max = c.i_bar_max;
    if (sigma_bar != nullptr) *sigma_bar = c.sigma_bar;
    if (target != nullptr) *target = c.target;
    if (dual_gap_bound != nullptr) *dual_gap_bound = c.dual_gap_bound;
  });
}

nvi_status nvi_result_write_csv(const nvi_result* result, const char* path) {
  return call([&] {
    require(result != nullptr && path != nullptr, "null argument");
    nvi::bench::write_file_atomic(path, nvi::bench::trace_csv(result->result.trace));
  });
}

int nvi_cmd_solve(const nvi_bench_options* options) {
  return nvi::bench::cmd_solve(to_options(options), std::cout, std::cerr);
}

int nvi_cmd_table1(const nvi_bench_options* options) {
  return nvi::bench::cmd_table1(to_options(options), std::cout, std::cerr);
}

int nvi_cmd_compare(const nvi_bench_options* options) {
  return nvi::bench::cmd_compare(to_options(options), std::cout, std::cerr);
}

int nvi_cmd_check(const nvi_bench_options* options) {
  return nvi::bench::cmd_check(to_options(options), std::cout, std::cerr);
}

}  // extern "C"

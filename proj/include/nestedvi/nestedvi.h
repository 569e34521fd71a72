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

#ifndef NESTEDVI_NESTEDVI_H_
#define NESTEDVI_NESTEDVI_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(NESTEDVI_BUILDING)
#define NVI_API __declspec(dllexport)
#else
#define NVI_API __declspec(dllimport)
#endif
#else
#define NVI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nvi_status {
  NVI_OK = 0,
  NVI_ERR_INVALID_ARGUMENT = 1,
  NVI_ERR_CONFIG = 2,
  NVI_ERR_SOLVER = 3,
  NVI_ERR_BUFFER_TOO_SMALL = 4,
  NVI_ERR_INTERNAL = 5
} nvi_status;

typedef struct nvi_problem nvi_problem;
typedef struct nvi_config nvi_config;
typedef struct nvi_result nvi_result;

typedef struct nvi_constants {
  double H;
  double R;
  double D;
  double L_F;
  double L_G;
  double upper_defect;
  double lower_defect;
} nvi_constants;

typedef struct nvi_record {
  int64_t k;
  int64_t i;
  int64_t l;
  double tau;
  double epsilon;
  double gamma;
  double z_norm;
  double gap;
  double measure;
  double v_residual;
  int outer_event;
} nvi_record;

typedef enum nvi_solver_kind {
  NVI_SOLVER_PATA = 0,
  NVI_SOLVER_PATA_CERTIFICATE = 1,
  NVI_SOLVER_BASELINE = 2
} nvi_solver_kind;

/* Called at every recorded row. y and z point to n doubles owned by the
   solver and are only valid during the call. */
typedef void (*nvi_observer)(const nvi_record* record, const double* y, const double* z, size_t n,
                             void* user_data);

/* Message of the last failed call on this thread; never NULL. */
NVI_API const char* nvi_last_error(void);
NVI_API const char* nvi_version(void);

/* Problems. */
NVI_API nvi_status nvi_problem_rotation2d(nvi_problem** out);
NVI_API nvi_status nvi_problem_random(int64_t n, double zeta, uint64_t seed, nvi_problem** out);
NVI_API nvi_status nvi_problem_from_json(const char* json, nvi_problem** out);
/* Writes at most capacity bytes including the terminator; *needed receives
   the full size including the terminator. */
NVI_API nvi_status nvi_problem_to_json(const nvi_problem* problem, char* buffer, size_t capacity,
                                       size_t* needed);
NVI_API void nvi_problem_free(nvi_problem* problem);
NVI_API nvi_status nvi_problem_dim(const nvi_problem* problem, size_t* n);
NVI_API nvi_status nvi_problem_constants(const nvi_problem* problem, nvi_constants* out);
/* out = F(x) + G(x) / tau. */
NVI_API nvi_status nvi_problem_tikhonov(const nvi_problem* problem, double tau, const double* x,
                                        size_t n, double* out);
NVI_API nvi_status nvi_problem_project(const nvi_problem* problem, const double* x, size_t n,
                                       double* out);
NVI_API nvi_status nvi_problem_gap(const nvi_problem* problem, double tau, const double* z, size_t n,
                                   double* gap);
NVI_API nvi_status nvi_problem_lower_residual(const nvi_problem* problem, const double* x, size_t n,
                                              double* residual);

/* Solver configuration. */
NVI_API nvi_status nvi_config_default(nvi_config** out);
/* Same schema as the benchmark config file; the problem, output, sweep and
   jobs keys are accepted and ignored. */
NVI_API nvi_status nvi_config_from_json(const char* json, nvi_config** out);
NVI_API void nvi_config_free(nvi_config* config);
NVI_API nvi_status nvi_config_set_kind(nvi_config* config, nvi_solver_kind kind);
NVI_API nvi_status nvi_config_set_k_max(nvi_config* config, int64_t k_max);
NVI_API nvi_status nvi_config_set_tol(nvi_config* config, double tol);
NVI_API nvi_status nvi_config_set_seed(nvi_config* config, uint64_t seed);
NVI_API nvi_status nvi_config_set_initial_point(nvi_config* config, const double* y0, size_t n);

/* Runs the configured solver. On NVI_ERR_SOLVER, *out (if not NULL) holds the
   partial trace. */
NVI_API nvi_status nvi_solve(const nvi_problem* problem, const nvi_config* config,
                             nvi_observer observer, void* user_data, nvi_result** out);
NVI_API void nvi_result_free(nvi_result* result);
/* "tol_reached", "k_max_reached", "certificate_reached" or "solver_error". */
NVI_API const char* nvi_result_termination(const nvi_result* result);
NVI_API int64_t nvi_result_outer_count(const nvi_result* result);
NVI_API int64_t nvi_result_iterations(const nvi_result* result);
NVI_API size_t nvi_result_trace_size(const nvi_result* result);
NVI_API nvi_status nvi_result_trace_record(const nvi_result* result, size_t index, nvi_record* out);
NVI_API nvi_status nvi_result_final_z(const nvi_result* result, double* out, size_t n);
NVI_API nvi_status nvi_result_final_w(const nvi_result* result, double* out, size_t n);
NVI_API nvi_status nvi_result_final_y(const nvi_result* result, double* out, size_t n);
/* Certificate fields; NVI_ERR_INVALID_ARGUMENT when the run had none. */
NVI_API nvi_status nvi_result_certificate(const nvi_result* result, int64_t* i_bar_max, double* sigma_bar,
                                          double* target, double* dual_gap_bound);
NVI_API nvi_status nvi_result_write_csv(const nvi_result* result, const char* path);

/* Benchmark commands; each returns a process exit code (0 ok, 1 failed
   check, 2 invalid config, 3 solver error) and prints to stdout/stderr. */
typedef struct nvi_bench_options {
  const char* config_path; /* NULL for none */
  const char* out_dir;     /* NULL for the config's output */
  int has_seed;
  uint64_t seed;
  int jobs; /* 0 for the config's value */
  int quiet;
} nvi_bench_options;

NVI_API int nvi_cmd_solve(const nvi_bench_options* options);
NVI_API int nvi_cmd_table1(const nvi_bench_options* options);
NVI_API int nvi_cmd_compare(const nvi_bench_options* options);
NVI_API int nvi_cmd_check(const nvi_bench_options* options);

#ifdef __cplusplus
}
#endif

#endif /* NESTEDVI_NESTEDVI_H_ */

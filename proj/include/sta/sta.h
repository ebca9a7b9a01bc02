// Copyright 2026 The STA Authors
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

/*
 * C interface to the stochastic task-allocation library.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function (NULL is accepted). Every fallible call returns a
 * sta_status; on failure sta_last_error() describes the problem for the
 * calling thread until its next failing call.
 *
 * Matrices crossing this boundary are row-major double arrays: entry (i, j)
 * of an r x c matrix sits at index i * c + j. Assignments are int32 arrays
 * holding, for each robot, its 0-based task index.
 */

#ifndef STA_STA_H_
#define STA_STA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(STA_BUILDING_LIBRARY)
#define STA_API __declspec(dllexport)
#else
#define STA_API __declspec(dllimport)
#endif
#else
#define STA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sta_status {
  STA_OK = 0,
  STA_ERR_INVALID_ARGUMENT = 1,
  STA_ERR_DIMENSION = 2,
  STA_ERR_NOT_FINITE = 3,
  STA_ERR_NOT_PSD = 4,
  STA_ERR_PARSE = 5,
  STA_ERR_SCHEMA = 6,
  STA_ERR_IO = 7,
  STA_ERR_OUT_OF_RANGE = 8,
  STA_ERR_EVALUATION = 9,
  STA_ERR_BUFFER_TOO_SMALL = 10,
  STA_ERR_INTERNAL = 99
} sta_status;

typedef enum sta_mode {
  STA_MODE_DETERMINISTIC = 0,
  STA_MODE_STOCHASTIC = 1
} sta_mode;

typedef enum sta_matrix_kind {
  STA_MATRIX_COST = 0,    /* m x m, Euclidean costs at the robot means */
  STA_MATRIX_GAMMA_0 = 1, /* m x m */
  STA_MATRIX_GAMMA_S = 2, /* m x m, stochastic mode only */
  STA_MATRIX_SIGMA_S = 3, /* m x m, stochastic mode only */
  STA_MATRIX_P_GAMMA = 4, /* m^2 x m^2, column-major vectorization */
  STA_MATRIX_Q = 5,       /* m x m, stochastic mode only */
  STA_MATRIX_GAMMA_F = 6  /* m x m, stochastic mode only */
} sta_matrix_kind;

typedef struct sta_ut_params {
  double alpha;
  double beta;
  double kappa;
} sta_ut_params;

typedef struct sta_scenario sta_scenario;
typedef struct sta_allocation sta_allocation;
typedef struct sta_comparison sta_comparison;

STA_API const char* sta_version(void);
STA_API const char* sta_last_error(void);
STA_API const char* sta_status_name(sta_status status);

/* ---- linear sum assignment ---------------------------------------------- */

/* Hungarian solve of an m x m row-major cost matrix. eps <= 0 selects the
 * default admissibility tolerance. total_cost may be NULL. */
STA_API sta_status sta_lsap_solve(const double* cost, size_t m, double eps,
                                  int32_t* task_of_robot, double* total_cost);

/* Exhaustive oracle, m <= 8. */
STA_API sta_status sta_lsap_brute_force(const double* cost, size_t m,
                                        int32_t* task_of_robot,
                                        double* total_cost);

/* ---- scenarios ----------------------------------------------------------- */

STA_API sta_status sta_scenario_load(const char* path, sta_scenario** out);
STA_API sta_status sta_scenario_parse(const char* json_text,
                                      sta_scenario** out);
STA_API void sta_scenario_free(sta_scenario* scenario);

STA_API size_t sta_scenario_size(const sta_scenario* scenario);
STA_API const char* sta_scenario_name(const sta_scenario* scenario);
STA_API const char* sta_scenario_sha256(const sta_scenario* scenario);
STA_API sta_status sta_scenario_ut(const sta_scenario* scenario,
                                   sta_ut_params* out);

/* ---- allocation ---------------------------------------------------------- */

/* ut may be NULL to use the scenario's settings. */
STA_API sta_status sta_allocate(const sta_scenario* scenario, sta_mode mode,
                                const sta_ut_params* ut,
                                sta_allocation** out);
STA_API void sta_allocation_free(sta_allocation* allocation);

STA_API size_t sta_allocation_size(const sta_allocation* allocation);

/* Gamma_f in stochastic mode, Gamma_0 otherwise; m entries. */
STA_API sta_status sta_allocation_assignment(const sta_allocation* allocation,
                                             int32_t* task_of_robot,
                                             size_t capacity);

/* Copies a matrix into `out` (row-major). rows/cols receive its shape even
 * when capacity is too small (STA_ERR_BUFFER_TOO_SMALL). */
STA_API sta_status sta_allocation_matrix(const sta_allocation* allocation,
                                         sta_matrix_kind kind, double* out,
                                         size_t capacity, size_t* rows,
                                         size_t* cols);

/* 1 when Gamma_f had to use an unsupported cell, 0 otherwise. */
STA_API int sta_allocation_low_confidence(const sta_allocation* allocation);

/* Report text, same buffer contract as sta_comparison_json. */
STA_API sta_status sta_allocation_json(const sta_allocation* allocation,
                                       char* buffer, size_t capacity,
                                       size_t* needed);
STA_API sta_status sta_allocation_write_json(const sta_allocation* allocation,
                                             const char* path);

/* ---- Monte Carlo comparison --------------------------------------------- */

STA_API sta_status sta_compare(const sta_scenario* scenario, uint64_t runs,
                               uint64_t seed, const sta_ut_params* ut,
                               unsigned threads, sta_comparison** out);
STA_API void sta_comparison_free(sta_comparison* comparison);

STA_API sta_status sta_comparison_reduction_ratio(
    const sta_comparison* comparison, double* out);
STA_API sta_status sta_comparison_mean_costs(const sta_comparison* comparison,
                                             double* gamma_0, double* gamma_f,
                                             double* oracle);
STA_API sta_status sta_comparison_lower_bound_violations(
    const sta_comparison* comparison, uint64_t* out);

/* Report text; `needed` receives strlen + 1. buffer may be NULL when
 * capacity is 0 to query the size. */
STA_API sta_status sta_comparison_json(const sta_comparison* comparison,
                                       char* buffer, size_t capacity,
                                       size_t* needed);
STA_API sta_status sta_comparison_write_json(const sta_comparison* comparison,
                                             const char* path);
STA_API sta_status sta_comparison_write_csv(const sta_comparison* comparison,
                                            const char* path);

#ifdef __cplusplus
}
#endif

#endif /* STA_STA_H_ */

/* Copyright 2026 The neelwall authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the neelwall library. All objects are opaque handles owned
 * by the caller and released with the matching _free function. Functions
 * return a status code; on failure nw_last_error() describes the problem
 * (thread local, valid until the next call on the same thread).
 *
 * A result carries a JSON summary and named CSV tables. Numbers in both are
 * printed with 17 significant digits.
 */

#ifndef NEELWALL_H
#define NEELWALL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NW_API __declspec(dllexport)
#else
#define NW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  NW_OK = 0,
  NW_ERR_ARGUMENT = 1, /* null pointer or malformed input */
  NW_ERR_DOMAIN = 2,   /* input outside the admissible set */
  NW_ERR_SOLVER = 3,   /* a minimization failed; partial results may exist */
  NW_ERR_INTERNAL = 4
} nw_status;

typedef enum { NW_MODEL_FULL = 0, NW_MODEL_LINEAR = 1 } nw_model;

typedef struct nw_config nw_config;
typedef struct nw_result nw_result;

typedef struct {
  double nodes_per_core;
  double growth;
  double h_max;
  double h_edge;
  double refine;
  size_t uniform_cells; /* nonzero: uniform grid with this many cells */
  double grad_tol;      /* relative to the energy */
  int max_iterations;
} nw_grid_options;

typedef struct {
  double dt;          /* radial step in log r */
  double rmin_factor; /* innermost ring at rmin_factor * delta */
  int angles;         /* angular cells, 0 for automatic */
} nw_core_options;

NW_API const char* nw_version(void);
NW_API const char* nw_last_error(void);

NW_API void nw_grid_options_default(nw_grid_options* options);
NW_API void nw_core_options_default(nw_core_options* options);

/* branches may be NULL. */
NW_API nw_status nw_config_create(double alpha, const double* positions, const int* signs,
                                  size_t count, const long* branches, nw_config** out);
NW_API void nw_config_free(nw_config* config);

/* e(+1) = e_{1 - cos alpha}, e(-1) = e_{1 + cos alpha}. */
NW_API double nw_core_gamma(double alpha, int sign);

/* Closed-form renormalized energy; core energies may be NULL. Table
 * "renorm" samples mu* and the trace of u* at `samples` points. */
NW_API nw_status nw_renorm(const nw_config* config, const double* e_plus, const double* e_minus,
                           size_t samples, nw_result** out);

/* One minimization; table "profile". */
NW_API nw_status nw_minimize(const nw_config* config, double epsilon, nw_model model,
                             const nw_grid_options* grid, nw_result** out);

/* Core functional along a ladder; table "core". */
NW_API nw_status nw_core(double gamma, const double* ladder, size_t count,
                         const nw_core_options* grid, int flipped, unsigned threads,
                         nw_result** out);

/* Ladder sweep; table "sweep". Core energies may be NULL. On NW_ERR_SOLVER
 * *out still holds the finished ladder points. */
NW_API nw_status nw_sweep(const nw_config* config, const double* ladder, size_t count,
                          nw_model model, const nw_grid_options* grid, const double* e_plus,
                          const double* e_minus, unsigned threads, nw_result** out);

/* Difference experiment between two configurations sharing alpha and d;
 * table "diff". */
NW_API nw_status nw_diff(const nw_config* a, const nw_config* b, const double* ladder,
                         size_t count, nw_model model, const nw_grid_options* grid,
                         unsigned threads, nw_result** out);

/* Closed-form identity suite; tables "validate" and "interaction". */
NW_API nw_status nw_validate(uint64_t seed, size_t traces, int pohozaev, nw_result** out);

NW_API const char* nw_result_json(const nw_result* result);
NW_API int nw_result_passed(const nw_result* result);
NW_API size_t nw_result_table_count(const nw_result* result);
NW_API const char* nw_result_table_name(const nw_result* result, size_t index);
NW_API const char* nw_result_table_csv(const nw_result* result, size_t index);
/* Top-level numeric field of the JSON summary. */
NW_API nw_status nw_result_number(const nw_result* result, const char* key, double* value);
NW_API void nw_result_free(nw_result* result);

#ifdef __cplusplus
}
#endif

#endif

//
// Copyright 2026 The DepthGuard Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// C interface to the depthguard library. All objects are opaque handles
// released with their matching *_free function. Functions return a
// dg_status; on failure dg_last_error() describes the problem for the
// calling thread until its next call into the library.

#ifndef DEPTHGUARD_DEPTHGUARD_H_
#define DEPTHGUARD_DEPTHGUARD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DEPTHGUARD_BUILDING_LIBRARY)
#define DG_API __attribute__((visibility("default")))
#else
#define DG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DG_OK = 0,
  DG_INVALID_ARGUMENT = 1,
  DG_DATA_ERROR = 2,
  DG_NOT_FOUND = 3,
  DG_BUDGET_EXCEEDED = 4,
  DG_FAILED_PRECONDITION = 5,
  DG_OUT_OF_RANGE = 6,
  DG_RESOURCE_EXHAUSTED = 7,
  DG_IO_ERROR = 8,
  DG_INTERNAL = 9
} dg_status;

typedef enum {
  DG_HALFSPACE = 0,
  DG_IRW = 1,
  DG_SIMPLICIAL = 2,
  DG_PROJECTION_MAD = 3, /* 1 / (1 + O1) */
  DG_PROJECTION_IQR = 4  /* 1 / (1 + O2) */
} dg_kind;

typedef enum { DG_LAPLACE = 0, DG_GAUSSIAN = 1 } dg_variant;

typedef struct {
  double epsilon;
  double delta;
  dg_variant variant;
} dg_privacy;

typedef struct {
  int monte_carlo; /* 0: exact enumeration */
  uint64_t samples;
  uint64_t seed;
} dg_simplicial_options;

typedef struct dg_dataset dg_dataset;
typedef struct dg_directions dg_directions;
typedef struct dg_grid dg_grid;
typedef struct dg_prior dg_prior;
typedef struct dg_ledger dg_ledger;
typedef struct dg_report dg_report;

DG_API const char* dg_last_error(void);
DG_API const char* dg_version(void);
DG_API void dg_string_free(char* s);

/* Datasets. Values are row-major, n rows of d columns. */
DG_API dg_status dg_dataset_from_values(const double* values, size_t n,
                                        size_t d, dg_dataset** out);
DG_API dg_status dg_dataset_load_csv(const char* path, int skip_header,
                                     dg_dataset** out);
DG_API size_t dg_dataset_n(const dg_dataset* data);
DG_API size_t dg_dataset_d(const dg_dataset* data);
DG_API void dg_dataset_free(dg_dataset* data);

/* Directions never depend on data. For d = 1 the set is {+1, -1}. */
DG_API dg_status dg_directions_sample(size_t m, size_t d, uint64_t seed,
                                      dg_directions** out);
DG_API dg_status dg_directions_from_values(const double* values, size_t m,
                                           size_t d, dg_directions** out);
DG_API size_t dg_directions_m(const dg_directions* dirs);
DG_API void dg_directions_free(dg_directions* dirs);

/* Non-private depth. `simplicial` may be NULL (exact enumeration). */
DG_API dg_status dg_depth(dg_kind kind, const double* x,
                          const dg_dataset* data, const dg_directions* dirs,
                          const dg_simplicial_options* simplicial,
                          double* out);
/* Writes n values; kind must be halfspace, irw or simplicial. */
DG_API dg_status dg_depth_vector(dg_kind kind, const dg_dataset* data,
                                 const dg_directions* dirs,
                                 const dg_simplicial_options* simplicial,
                                 double* out);
/* kind must be a projection kind; +infinity on degenerate scale. */
DG_API dg_status dg_outlyingness(dg_kind kind, const double* x,
                                 const dg_dataset* data,
                                 const dg_directions* dirs, double* out);

/* Sensitivities. norm is 1 or 2 for vectors. */
DG_API dg_status dg_global_sensitivity(dg_kind kind, size_t n, size_t d,
                                       double* out);
DG_API dg_status dg_vector_global_sensitivity(dg_kind kind, size_t n,
                                              size_t d, int norm,
                                              int tie_robust, double* out);
DG_API dg_status dg_breakdown_holds(dg_kind kind, const double* x,
                                    const dg_dataset* data,
                                    const dg_directions* dirs, double eta,
                                    double k_star, int* out);

/* Candidate grids and priors for the exponential mechanisms. */
DG_API dg_status dg_grid_regular(const double* lo, const double* hi,
                                 const size_t* counts, size_t d,
                                 dg_grid** out);
DG_API dg_status dg_grid_from_points(const double* values, size_t count,
                                     size_t d, dg_grid** out);
DG_API size_t dg_grid_size(const dg_grid* grid);
/* Number of grid points with Euclidean norm <= radius. */
DG_API size_t dg_grid_count_inside(const dg_grid* grid, double radius);
DG_API void dg_grid_free(dg_grid* grid);

DG_API dg_status dg_prior_uniform(dg_prior** out);
DG_API dg_status dg_prior_gaussian(const double* center, size_t d,
                                   double scale, dg_prior** out);
DG_API dg_status dg_prior_table(const double* weights, size_t count,
                                dg_prior** out);
DG_API void dg_prior_free(dg_prior* prior);

/* Budget ledger backed by a newline-delimited JSON file. A NULL path keeps
   the ledger in memory. */
DG_API dg_status dg_ledger_open(const char* path, dg_ledger** out);
DG_API size_t dg_ledger_size(const dg_ledger* ledger);
DG_API void dg_ledger_total(const dg_ledger* ledger, double* epsilon,
                            double* delta);
DG_API void dg_ledger_free(dg_ledger* ledger);

DG_API dg_status dg_advanced_composition(double epsilon, double delta_prime,
                                         size_t k, double* per_mechanism);

typedef struct {
  uint64_t seed;
  dg_ledger* ledger;      /* may be NULL */
  double budget_epsilon;  /* <= 0: no cap */
  double budget_delta;    /* < 0: no cap on delta */
  int tie_robust;         /* vector sensitivity without general position */
  const dg_simplicial_options* simplicial; /* may be NULL */
} dg_run_options;

DG_API dg_status dg_private_depth_point(dg_kind kind, const double* x,
                                        const dg_dataset* data,
                                        const dg_directions* dirs,
                                        const dg_privacy* privacy,
                                        const dg_run_options* options,
                                        dg_report** out);
DG_API dg_status dg_private_depth_vector(dg_kind kind, const dg_dataset* data,
                                         const dg_directions* dirs,
                                         const dg_privacy* privacy,
                                         const dg_run_options* options,
                                         dg_report** out);
/* eta <= 0 selects log(n) / n^0.65. */
DG_API dg_status dg_private_projection_depth(
    dg_kind kind, const double* x, const dg_dataset* data,
    const dg_directions* dirs, double eta, const dg_privacy* privacy,
    const dg_run_options* options, dg_report** out);
DG_API dg_status dg_private_median_exp(dg_kind kind, const dg_dataset* data,
                                       const dg_grid* grid,
                                       const dg_prior* prior,
                                       const dg_directions* dirs,
                                       double epsilon,
                                       const dg_run_options* options,
                                       dg_report** out);
DG_API dg_status dg_private_projection_median(
    dg_kind kind, const dg_dataset* data, const dg_directions* dirs,
    double radius, const dg_grid* grid, double eta, const dg_privacy* privacy,
    const dg_run_options* options, dg_report** out);
DG_API dg_status dg_private_rank_test(dg_kind kind, const dg_dataset* group_a,
                                      const dg_dataset* group_b,
                                      const dg_directions* dirs,
                                      const dg_privacy* privacy,
                                      const dg_run_options* options,
                                      dg_report** out);

DG_API int dg_report_is_bottom(const dg_report* report);
DG_API size_t dg_report_payload_size(const dg_report* report);
/* Copies min(capacity, size) released values. */
DG_API size_t dg_report_payload(const dg_report* report, double* out,
                                size_t capacity);
DG_API void dg_report_spend(const dg_report* report, double* epsilon,
                            double* delta);
/* NaN unless the report is a rank test. */
DG_API double dg_report_p_value(const dg_report* report);
DG_API dg_status dg_report_to_json(const dg_report* report,
                                   int include_unsafe_audit, char** out);
DG_API void dg_report_free(dg_report* report);

/* Empirical privacy audit of the Laplace depth-point mechanism: pairs are
   formed by moving each of the first min(10, n) rows far outside the data.
   noise_factor < 1 shrinks the noise (negative control). */
DG_API dg_status dg_audit_depth_point(dg_kind kind, const double* x,
                                      const dg_dataset* data,
                                      const dg_directions* dirs,
                                      double epsilon, size_t samples,
                                      double noise_factor, uint64_t seed,
                                      double* max_log_ratio);

typedef struct {
  const size_t* n_grid; /* may be NULL for the default grid */
  size_t n_grid_size;
  double epsilon; /* 0: default */
  double delta;   /* 0: default */
  size_t reps;    /* 0: default */
  size_t directions;
  size_t samples;
  uint64_t seed;
} dg_experiment_config;

/* Tidy CSV with columns experiment,n,epsilon,seed,metric,value. */
DG_API dg_status dg_experiment_run(const char* name,
                                   const dg_experiment_config* config,
                                   char** csv);
DG_API int dg_experiment_known(const char* name);

#ifdef __cplusplus
}
#endif

#endif  // DEPTHGUARD_DEPTHGUARD_H_

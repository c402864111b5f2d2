/* macov - worst-case coverage design for movable-antenna transmitters
 * aided by passive reflecting surfaces
 * Copyright (C) 2026 the macov authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the macov shared library. All objects are opaque handles;
 * every function returns a status code and leaves details in
 * macov_last_error() on failure. Strings returned through char** are
 * heap-allocated and must be released with macov_string_free().
 */

#ifndef MACOV_H
#define MACOV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum macov_status {
  MACOV_OK = 0,
  MACOV_ERR_INVALID_ARGUMENT = 1,
  MACOV_ERR_PARSE = 2,
  MACOV_ERR_VALIDATION = 3,
  MACOV_ERR_IO = 4,
  MACOV_ERR_INTERNAL = 5
} macov_status;

typedef struct macov_scenario macov_scenario;
typedef struct macov_solution macov_solution;

const char* macov_version(void);

/* Thread-local message describing the most recent failure. */
const char* macov_last_error(void);

void macov_string_free(char* s);

/* ----- scenarios ----------------------------------------------------- */

macov_status macov_scenario_from_file(const char* path, macov_scenario** out);
macov_status macov_scenario_from_json(const char* json_text,
                                      macov_scenario** out);
/* Built-in fixtures: "desk" or "five-panel". */
macov_status macov_scenario_builtin(const char* name, macov_scenario** out);
void macov_scenario_free(macov_scenario* s);

/* Writes a newline-separated violation report (empty string when valid). */
macov_status macov_scenario_validate(const macov_scenario* s, char** report,
                                     int* n_violations);
macov_status macov_scenario_to_json(const macov_scenario* s, char** json_out);

/* ----- solving -------------------------------------------------------- */

typedef struct macov_solve_options {
  double tol_obj;
  double tol_feas;
  double eps_ao;
  int max_outer;
  int max_solver_iter;
  int workers;            /* sweep parallelism */
  int floor_mode;         /* 0 amplitude-aware floor, 1 full-element floor */
  const char* scheme;     /* NULL keeps the scenario's scheme */
  unsigned long long seed;
  int has_seed;           /* nonzero to override the scenario seed */
} macov_solve_options;

void macov_solve_options_init(macov_solve_options* opts);

macov_status macov_solve(const macov_scenario* s,
                         const macov_solve_options* opts,
                         macov_solution** out);
void macov_solution_free(macov_solution* sol);

double macov_solution_worst_snr_db(const macov_solution* sol);
double macov_solution_worst_snr_linear(const macov_solution* sol);
int macov_solution_outer_iterations(const macov_solution* sol);
int macov_solution_converged(const macov_solution* sol);
int macov_solution_worst_area(const macov_solution* sol);
int macov_solution_worst_point(const macov_solution* sol);

int macov_solution_layout_count(const macov_solution* sol);
int macov_solution_antenna_count(const macov_solution* sol);
/* yz receives 2*M doubles: y0, z0, y1, z1, ... */
macov_status macov_solution_layout(const macov_solution* sol, int index,
                                   double* yz, size_t capacity);

int macov_solution_reflection_count(const macov_solution* sol);
int macov_solution_element_count(const macov_solution* sol);
macov_status macov_solution_reflection(const macov_solution* sol, int index,
                                       double* re, double* im,
                                       size_t capacity);

int macov_solution_trace_length(const macov_solution* sol);
macov_status macov_solution_trace_eta(const macov_solution* sol, double* eta,
                                      size_t capacity);
macov_status macov_solution_to_json(const macov_solution* sol,
                                    char** json_out);

/* ----- verification and experiments ----------------------------------- */

/* Closed-form vs Monte Carlo comparison at every candidate point; returns
 * the worst |z-score| plus a per-point report. */
macov_status macov_validate_mc(const macov_scenario* s, int n_draws,
                               unsigned long long seed, double* max_abs_z,
                               char** report);

/* Runs an experiment file, writing the results CSV and manifest. The
 * optional out_override replaces the experiment's output path. A short
 * text summary is returned. */
macov_status macov_run_sweep(const char* experiment_path,
                             const char* out_override,
                             const macov_solve_options* opts, char** summary);
macov_status macov_run_cost_sweep(const char* experiment_path,
                                  const char* out_override,
                                  const macov_solve_options* opts,
                                  char** summary);

#ifdef __cplusplus
}
#endif

#endif /* MACOV_H */

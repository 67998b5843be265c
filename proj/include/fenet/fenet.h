// Copyright 2026 The fenet Authors
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

#ifndef FENET_FENET_H_
#define FENET_FENET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FENET_BUILDING_LIBRARY)
#define FE_API __attribute__((visibility("default")))
#else
#define FE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fe_status {
  FE_OK = 0,
  FE_ERR_INVALID_ARGUMENT = 1,
  FE_ERR_PARSE = 2,
  FE_ERR_INFEASIBLE = 3,
  FE_ERR_INVARIANT = 4,
  FE_ERR_BOUNDS = 5,
  FE_ERR_IO = 6,
  FE_ERR_NOT_OPTIMAL = 7,
  FE_ERR_UNKNOWN_ID = 8,
  FE_ERR_INVALID_INSTANCE = 9
} fe_status;

typedef struct fe_instance fe_instance;
typedef struct fe_solution fe_solution;
typedef struct fe_regionalization fe_regionalization;
typedef struct fe_regional_solution fe_regional_solution;
typedef struct fe_trace fe_trace;

FE_API const char* fe_version(void);
FE_API const char* fe_status_name(fe_status status);
// Message of the last failed call on this thread; empty after a success.
FE_API const char* fe_last_error(void);
// Every char** output is heap allocated and released with this.
FE_API void fe_string_free(char* s);

// Accepts "1000000", "1e6" or "10^6". A NULL text reads FE_SCALE from the
// environment and falls back to 10^6.
FE_API fe_status fe_scale_parse(const char* text, int* exponent);

// kind: continuous-line, line-lb, line-noncontig, tree2, tree-r, synthetic.
// params_json is an object of generator parameters (may be NULL). On success
// `companions` (optional) receives an object of named regionalization
// documents that come with the generated instance.
FE_API fe_status fe_generate(const char* kind, const char* params_json, int scale_exponent,
                             fe_instance** out, char** companions);
FE_API fe_status fe_instance_from_json(const char* json, int scale_exponent, fe_instance** out);
FE_API fe_status fe_instance_load(const char* path, int scale_exponent, fe_instance** out);
FE_API fe_status fe_instance_to_json(const fe_instance* inst, char** out);
// Counts, totals, metric kind and aspect ratio as a JSON object.
FE_API fe_status fe_instance_info(const fe_instance* inst, char** out);
FE_API fe_status fe_instance_distance(const fe_instance* inst, const char* demand_id, const char* fc_id,
                                      int64_t* out);
FE_API int fe_instance_scale(const fe_instance* inst);
FE_API void fe_instance_free(fe_instance* inst);

// Minimum-delay equilibrium.
FE_API fe_status fe_solve(const fe_instance* inst, fe_solution** out);
FE_API fe_status fe_solution_from_json(const fe_instance* inst, const char* json, fe_solution** out);
FE_API fe_status fe_solution_totals(const fe_solution* sol, int64_t* cost, int64_t* total_delay);
// format: json, assignment.csv, backlogs.csv, delays.csv.
FE_API fe_status fe_solution_render(const fe_instance* inst, const fe_solution* sol, const char* format,
                                    char** out);
// Checks the equilibrium conditions and strong duality. *ok is 1 when all
// hold; `report` (optional) lists the violations.
FE_API fe_status fe_solution_verify(const fe_instance* inst, const fe_solution* sol, int* ok, char** report);
FE_API void fe_solution_free(fe_solution* sol);

// method: single, k, line-scale, euclidean-scale, quadrant.
FE_API fe_status fe_regionalize(const fe_instance* inst, const char* method, fe_regionalization** out);
FE_API fe_status fe_regionalization_from_json(const fe_instance* inst, const char* json,
                                              fe_regionalization** out);
FE_API fe_status fe_regionalization_to_json(const fe_instance* inst, const fe_regionalization* reg, char** out);
// Parts holding at least one demand.
FE_API size_t fe_regionalization_regions(const fe_regionalization* reg);
FE_API void fe_regionalization_free(fe_regionalization* reg);

FE_API fe_status fe_solve_regionalized(const fe_instance* inst, const fe_regionalization* reg,
                                       fe_regional_solution** out);
FE_API fe_status fe_regional_total_delay(const fe_regional_solution* sol, int64_t* out);
// Per-region values mapped back onto the whole instance.
FE_API fe_status fe_regional_flatten(const fe_instance* inst, const fe_regional_solution* sol, fe_solution** out);
// format: regions.csv.
FE_API fe_status fe_regional_render(const fe_instance* inst, const fe_regional_solution* sol, const char* format,
                                    char** out);
// Zero-backlog check per grid cell of a scale decomposition.
FE_API fe_status fe_regional_check_segments(const fe_instance* inst, const fe_regional_solution* sol, int* ok,
                                            char** report);
FE_API void fe_regional_free(fe_regional_solution* sol);

// Global against regionalized delay as a JSON report.
FE_API fe_status fe_compare(const fe_instance* inst, const fe_regionalization* reg, char** report);

// config_json: {"dt": "0.01", "steps": 1000, "sample_every": 10,
// "routing": "greedy" | "fixed", "initial": "zero" | "static"}.
FE_API fe_status fe_simulate(const fe_instance* inst, const char* config_json, fe_trace** out);
// format: csv, summary.json.
FE_API fe_status fe_trace_render(const fe_instance* inst, const fe_trace* trace, const char* format, char** out);
FE_API void fe_trace_free(fe_trace* trace);

// alphas: comma separated decimals in [0, 1]. Any of the outputs may be NULL.
FE_API fe_status fe_sweep_alpha(const char* config_json, const char* alphas, int scale_exponent, char** csv,
                                char** svg, char** summary);

#ifdef __cplusplus
}
#endif

#endif  // FENET_FENET_H_

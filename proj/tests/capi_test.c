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

// Exercises the C interface from C.

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "fenet/fenet.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

#define OK(call)                                                               \
  do {                                                                         \
    fe_status st_ = (call);                                                    \
    if (st_ != FE_OK) {                                                        \
      fprintf(stderr, "%s:%d: %s -> %s: %s\n", __FILE__, __LINE__, #call,      \
              fe_status_name(st_), fe_last_error());                           \
      ++failures;                                                              \
    }                                                                          \
  } while (0)

static void test_errors(void) {
  fe_instance* inst = NULL;
  EXPECT(fe_instance_from_json("{", 6, &inst) == FE_ERR_PARSE);
  EXPECT(strlen(fe_last_error()) > 0);
  EXPECT(inst == NULL);
  EXPECT(fe_instance_from_json(
             "{\"metric\":{\"type\":\"line\"},\"demands\":[{\"id\":\"a\",\"pos\":\"0\",\"d\":2}],"
             "\"fcs\":[{\"id\":\"f\",\"pos\":\"1\",\"c\":1}]}",
             6, &inst) == FE_ERR_INFEASIBLE);
  EXPECT(strstr(fe_last_error(), "supply") != NULL);
  EXPECT(fe_generate("nope", NULL, 6, &inst, NULL) == FE_ERR_INVALID_ARGUMENT);
  EXPECT(fe_generate("line-lb", "{\"k\": 3, \"bogus\": 1}", 6, &inst, NULL) == FE_ERR_INVALID_ARGUMENT);
  EXPECT(fe_solve(NULL, NULL) == FE_ERR_INVALID_ARGUMENT);
  EXPECT(fe_instance_load("/nonexistent/file.json", 6, &inst) == FE_ERR_IO);
  int e = 0;
  EXPECT(fe_scale_parse("1e3", &e) == FE_OK && e == 3);
  EXPECT(fe_scale_parse("7", &e) != FE_OK);
  EXPECT(strcmp(fe_status_name(FE_OK), "ok") == 0);
}

static void test_line_lb(void) {
  fe_instance* inst = NULL;
  char* comp = NULL;
  OK(fe_generate("line-lb", "{\"k\": 3, \"dprime\": 1, \"L\": \"100\"}", 6, &inst, &comp));
  if (inst == NULL) return;
  EXPECT(comp != NULL && strstr(comp, "k-regions") != NULL);
  fe_string_free(comp);

  int64_t d = 0;
  OK(fe_instance_distance(inst, "i1", "j1", &d));
  EXPECT(d == 1000000);
  EXPECT(fe_instance_distance(inst, "i1", "zz", &d) == FE_ERR_UNKNOWN_ID);
  EXPECT(fe_instance_scale(inst) == 6);

  fe_solution* sol = NULL;
  OK(fe_solve(inst, &sol));
  int64_t cost = 0, delay = 0;
  OK(fe_solution_totals(sol, &cost, &delay));
  EXPECT(delay == 306000000LL);
  EXPECT(cost == 103000000LL);

  char* json = NULL;
  OK(fe_solution_render(inst, sol, "json", &json));
  fe_solution* back = NULL;
  OK(fe_solution_from_json(inst, json, &back));
  int ok = 0;
  char* report = NULL;
  OK(fe_solution_verify(inst, back, &ok, &report));
  EXPECT(ok == 1);
  fe_string_free(report);
  fe_string_free(json);

  char* csv = NULL;
  OK(fe_solution_render(inst, sol, "backlogs.csv", &csv));
  EXPECT(csv != NULL && strcmp(csv, "fc_id,backlog\nj1,102\nj2,101\nj3,0\n") == 0);
  fe_string_free(csv);
  EXPECT(fe_solution_render(inst, sol, "xml", &csv) == FE_ERR_INVALID_ARGUMENT);

  fe_regionalization* reg = NULL;
  OK(fe_regionalize(inst, "k", &reg));
  EXPECT(fe_regionalization_regions(reg) == 3);
  fe_regional_solution* rs = NULL;
  OK(fe_solve_regionalized(inst, reg, &rs));
  OK(fe_regional_total_delay(rs, &delay));
  EXPECT(delay == 103000000LL);
  char* cmp = NULL;
  OK(fe_compare(inst, reg, &cmp));
  EXPECT(cmp != NULL && strstr(cmp, "\"regional_delay\": \"103\"") != NULL);
  fe_string_free(cmp);

  char* regdoc = NULL;
  OK(fe_regionalization_to_json(inst, reg, &regdoc));
  fe_regionalization* reg2 = NULL;
  OK(fe_regionalization_from_json(inst, regdoc, &reg2));
  EXPECT(fe_regionalization_regions(reg2) == 3);
  fe_string_free(regdoc);

  fe_regionalization_free(reg2);
  fe_regional_free(rs);
  fe_regionalization_free(reg);
  fe_solution_free(back);
  fe_solution_free(sol);
  fe_instance_free(inst);
}

static void test_simulate_and_sweep(void) {
  fe_instance* inst = NULL;
  OK(fe_generate("continuous-line", "{\"n\": 20}", 6, &inst, NULL));
  fe_trace* tr = NULL;
  OK(fe_simulate(inst, "{\"dt\": \"0.01\", \"steps\": 200, \"sample_every\": 100}", &tr));
  char* csv = NULL;
  OK(fe_trace_render(inst, tr, "csv", &csv));
  EXPECT(csv != NULL && strncmp(csv, "t,fc_id,backlog\n", 16) == 0);
  fe_string_free(csv);
  char* summary = NULL;
  OK(fe_trace_render(inst, tr, "summary.json", &summary));
  EXPECT(summary != NULL && strstr(summary, "final_residual") != NULL);
  fe_string_free(summary);
  EXPECT(fe_simulate(inst, "{\"routing\": \"random\"}", &tr) == FE_ERR_INVALID_ARGUMENT);
  fe_trace_free(tr);
  fe_instance_free(inst);

  char *c = NULL, *svg = NULL;
  OK(fe_sweep_alpha("{\"seed\": 3, \"n_demands\": 60, \"n_fcs\": 6}", "0,1", 6, &c, &svg, NULL));
  EXPECT(c != NULL && strncmp(c, "alpha,delay,min_cost", 20) == 0);
  EXPECT(svg != NULL && strstr(svg, "</svg>") != NULL);
  fe_string_free(c);
  fe_string_free(svg);
  EXPECT(fe_sweep_alpha(NULL, "0,2", 6, NULL, NULL, NULL) == FE_ERR_INVALID_ARGUMENT);
}

int main(void) {
  printf("fenet %s\n", fe_version());
  test_errors();
  test_line_lb();
  test_simulate_and_sweep();
  if (failures) {
    fprintf(stderr, "%d failures\n", failures);
    return 1;
  }
  printf("all C API checks passed\n");
  return 0;
}

/* Copyright 2026 The cpdyn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the cpdyn shared library. All functions return a status code;
 * CPDYN_OK means success. On failure cpdyn_last_error() returns a JSON error
 * object ({"error":{"code":...,"class":...,"message":...}}) describing the
 * most recent failure on the calling thread. Strings returned through output
 * parameters are heap allocated and must be released with
 * cpdyn_string_free(). Handles are opaque and freed with their *_free
 * function; they are immutable and safe to share across threads. */

#ifndef CPDYN_H
#define CPDYN_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpdyn_status {
  CPDYN_OK = 0,
  CPDYN_ERR_VALIDATION = 1,
  CPDYN_ERR_NUMERIC = 2,
  CPDYN_ERR_IO = 3
} cpdyn_status;

const char* cpdyn_version(void);

/* JSON error object for the last failure on this thread ("" if none). The
 * pointer stays valid until the next library call from the same thread. */
const char* cpdyn_last_error(void);

void cpdyn_string_free(char* s);

/* Scenario execution. `report_json` receives the report document;
 * `csv_text` receives the CSV trace when the scenario emits one (NULL
 * otherwise) and may itself be NULL when the caller does not want it. */
cpdyn_status cpdyn_run_scenario_json(const char* scenario_json,
                                     char** report_json, char** csv_text);

/* Same, reading the scenario from a file; relative input references resolve
 * against the file's directory. */
cpdyn_status cpdyn_run_scenario_path(const char* path, char** report_json,
                                     char** csv_text);

/* ---- handle level ---- */

typedef struct cpdyn_channel cpdyn_channel;
typedef struct cpdyn_density cpdyn_density;
typedef struct cpdyn_measure cpdyn_measure;

cpdyn_status cpdyn_channel_parse(const char* json_text, cpdyn_channel** out);
void cpdyn_channel_free(cpdyn_channel* c);
int cpdyn_channel_dim(const cpdyn_channel* c);
int cpdyn_channel_is_trace_preserving(const cpdyn_channel* c);
int cpdyn_channel_is_unital(const cpdyn_channel* c);

cpdyn_status cpdyn_density_parse(const char* json_text, cpdyn_density** out);
cpdyn_status cpdyn_density_format(const cpdyn_density* d, char** json_text);
void cpdyn_density_free(cpdyn_density* d);
int cpdyn_density_dim(const cpdyn_density* d);

cpdyn_status cpdyn_channel_apply(const cpdyn_channel* c, const cpdyn_density* in,
                                 cpdyn_density** out);
cpdyn_status cpdyn_trace_distance(const cpdyn_density* a, const cpdyn_density* b,
                                  double* out);

/* Omega-limit cycle detection; the report is a JSON document with period,
 * cycle, residual and burn_in fields. */
cpdyn_status cpdyn_detect_limit_cycle(const cpdyn_channel* c,
                                      const cpdyn_density* rho0, double tol,
                                      int max_iterations, int max_period,
                                      char** report_json);

cpdyn_status cpdyn_measure_parse(const char* json_text, cpdyn_measure** out);
void cpdyn_measure_free(cpdyn_measure* m);
cpdyn_status cpdyn_measure_barycenter(const cpdyn_measure* m,
                                      cpdyn_density** out);

#ifdef __cplusplus
}
#endif

#endif /* CPDYN_H */

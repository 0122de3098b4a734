/* Copyright 2026 The paulipath Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PAULIPATH_PAULIPATH_H_
#define PAULIPATH_PAULIPATH_H_

#if defined(_WIN32)
#define PP_API __declspec(dllexport)
#else
#define PP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_ERR_INTERNAL = 1,
  PP_ERR_VALIDATION = 2,
  PP_ERR_RESOURCE = 3,
  PP_ERR_ORACLE_CAP = 4,
  PP_ERR_ARGUMENT = 5
} pp_status;

/* Circuit, Hamiltonian and initial state loaded together. */
typedef struct pp_problem pp_problem;

/* state_json may be NULL for |0...0>. On failure *out is NULL. */
PP_API pp_status pp_problem_create(const char* circuit_json, const char* hamiltonian_json, const char* state_json,
                                   pp_problem** out);
PP_API void pp_problem_destroy(pp_problem* problem);

/* JSON summary of the problem. Free with pp_string_free. */
PP_API pp_status pp_problem_info(const pp_problem* problem, char** out);

/* Runs one mode from a JSON config and writes the JSON report.
 * Modes: estimate, choose-m, mse-benchmark, oracle-check, path-dump. */
PP_API pp_status pp_run(const pp_problem* problem, const char* config_json, char** out);

/* Scaling sweep on the built-in adversarial ansatz. */
PP_API pp_status pp_scaling_sweep(const char* config_json, char** out);

/* Re-serializes JSON text with 17 significant digits per double. */
PP_API pp_status pp_format_json(const char* json, char** out);

/* Message of the last failure on this thread; empty after a success. */
PP_API const char* pp_last_error(void);

PP_API void pp_string_free(char* s);

PP_API const char* pp_version(void);

#ifdef __cplusplus
}
#endif

#endif /* PAULIPATH_PAULIPATH_H_ */

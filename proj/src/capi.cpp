// Copyright 2026 The paulipath Authors
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

#include "paulipath/paulipath.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "paulipath/errors.hpp"
#include "paulipath/run.hpp"

struct pp_problem {
  paulipath::Problem problem;
};

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename F>
pp_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PP_OK;
  } catch (const paulipath::OracleCapError& e) {
    g_last_error = e.what();
    return PP_ERR_ORACLE_CAP;
  } catch (const paulipath::ResourceError& e) {
    g_last_error = e.what();
    return PP_ERR_RESOURCE;
  } catch (const paulipath::ValidationError& e) {
    g_last_error = e.what();
    return PP_ERR_VALIDATION;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PP_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PP_ERR_INTERNAL;
  }
}

pp_status bad_argument(const char* what) {
  g_last_error = what;
  return PP_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

pp_status pp_problem_create(const char* circuit_json, const char* hamiltonian_json, const char* state_json,
                            pp_problem** out) {
  if (!out) return bad_argument("out is NULL");
  *out = nullptr;
  if (!circuit_json || !hamiltonian_json) return bad_argument("circuit and Hamiltonian JSON are required");
  return guarded([&] {
    std::optional<std::string_view> state;
    if (state_json) state = state_json;
    *out = new pp_problem{paulipath::Problem::from_json_text(circuit_json, hamiltonian_json, state)};
  });
}

void pp_problem_destroy(pp_problem* problem) { delete problem; }

pp_status pp_problem_info(const pp_problem* problem, char** out) {
  if (!problem || !out) return bad_argument("problem and out must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = copy_out(paulipath::problem_info(problem->problem)); });
}

pp_status pp_run(const pp_problem* problem, const char* config_json, char** out) {
  if (!problem || !config_json || !out) return bad_argument("problem, config and out must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = copy_out(paulipath::run_report(problem->problem, config_json)); });
}

pp_status pp_scaling_sweep(const char* config_json, char** out) {
  if (!config_json || !out) return bad_argument("config and out must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = copy_out(paulipath::scaling_sweep_report(config_json)); });
}

pp_status pp_format_json(const char* json, char** out) {
  if (!json || !out) return bad_argument("json and out must be non-NULL");
  *out = nullptr;
  return guarded([&] { *out = copy_out(paulipath::dump_json17(json)); });
}

const char* pp_last_error(void) { return g_last_error.c_str(); }

void pp_string_free(char* s) { std::free(s); }

const char* pp_version(void) { return "0.1.0"; }

}  // extern "C"

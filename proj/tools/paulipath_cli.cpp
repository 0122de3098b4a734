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

// paulipath-cli: file-driven front end over the C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "paulipath/paulipath.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string mode;
  std::string circuit, hamiltonian, state, params;
  std::optional<double> lambda;
  std::string trunc_m;
  std::optional<double> target_mse, epsilon, delta;
  std::optional<long long> samples;
  std::optional<unsigned long long> seed;
  std::optional<long long> workers;
  bool deterministic_sum = false;
  std::optional<long long> max_paths;
  std::string out, report, replay;
  std::optional<long long> sweep_n, sweep_lmin, sweep_lmax;
  std::optional<double> sweep_c;
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(std::string("cannot read ") + what + " file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

int exit_code(pp_status s) {
  switch (s) {
    case PP_OK: return 0;
    case PP_ERR_VALIDATION:
    case PP_ERR_ARGUMENT: return kExitValidation;
    case PP_ERR_RESOURCE: return 3;
    case PP_ERR_ORACLE_CAP: return 4;
    default: return kExitFailure;
  }
}

struct CallFailed {
  pp_status status;
};

std::string take(char* s) {
  std::string out(s);
  pp_string_free(s);
  return out;
}

void check(pp_status s) {
  if (s != PP_OK) throw CallFailed{s};
}

Json config_from(const Options& o) {
  Json cfg;
  cfg["mode"] = o.mode;
  if (o.lambda) cfg["lambda"] = *o.lambda;
  if (!o.trunc_m.empty()) {
    if (o.trunc_m == "full") {
      cfg["trunc_m"] = "full";
    } else {
      std::size_t used = 0;
      long long m = -1;
      try {
        m = std::stoll(o.trunc_m, &used);
      } catch (const std::exception&) {
      }
      if (m < 0 || used != o.trunc_m.size()) throw UsageError("--trunc-m takes a non-negative integer or 'full'");
      cfg["trunc_m"] = m;
    }
  }
  if (o.target_mse) cfg["target_mse"] = *o.target_mse;
  if (o.epsilon) cfg["epsilon"] = *o.epsilon;
  if (o.delta) cfg["delta"] = *o.delta;
  if (o.samples) cfg["samples"] = *o.samples;
  if (o.seed) cfg["seed"] = *o.seed;
  if (o.workers) cfg["workers"] = *o.workers;
  cfg["deterministic_sum"] = o.deterministic_sum;
  if (o.max_paths) cfg["max_paths"] = *o.max_paths;
  if (!o.params.empty()) {
    try {
      cfg["params"] = Json::parse(read_file(o.params, "params"));
    } catch (const Json::parse_error& e) {
      throw UsageError("params file '" + o.params + "': " + e.what());
    }
  }
  Json files = Json::object();
  files["circuit"] = o.circuit;
  files["hamiltonian"] = o.hamiltonian;
  if (!o.state.empty()) files["state"] = o.state;
  if (!o.params.empty()) files["params"] = o.params;
  cfg["files"] = files;
  return cfg;
}

std::string run_problem(const std::string& circuit, const std::string& hamiltonian, const std::string& state,
                        const Json& cfg) {
  const std::string c = read_file(circuit, "circuit");
  const std::string h = read_file(hamiltonian, "Hamiltonian");
  std::optional<std::string> s;
  if (!state.empty()) s = read_file(state, "state");
  pp_problem* problem = nullptr;
  check(pp_problem_create(c.c_str(), h.c_str(), s ? s->c_str() : nullptr, &problem));
  char* out = nullptr;
  const pp_status st = pp_run(problem, cfg.dump().c_str(), &out);
  pp_problem_destroy(problem);
  check(st);
  return take(out);
}

bool same_value(const Json& a, const Json& b, double rel) {
  if (a.is_number() && b.is_number() && !(a.is_number_integer() && b.is_number_integer())) {
    const double x = a.get<double>(), y = b.get<double>();
    if (x == y) return true;
    return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y));
  }
  if (a.type() != b.type() || a.size() != b.size()) return false;
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key()) || !same_value(it.value(), b[it.key()], rel)) return false;
    }
    return true;
  }
  if (a.is_array()) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!same_value(a[k], b[k], rel)) return false;
    }
    return true;
  }
  return a == b;
}

int replay(const Options& o) {
  Json old;
  try {
    old = Json::parse(read_file(o.replay, "report"));
  } catch (const Json::parse_error& e) {
    throw UsageError("report '" + o.replay + "': " + e.what());
  }
  if (!old.contains("config") || !old.contains("result")) throw UsageError("report has no config/result");
  const Json cfg = old["config"];
  std::string fresh;
  if (old.value("mode", "") == "scaling-sweep") {
    char* out = nullptr;
    check(pp_scaling_sweep(cfg.dump().c_str(), &out));
    fresh = take(out);
  } else {
    const Json& files = cfg.at("files");
    fresh = run_problem(files.at("circuit"), files.at("hamiltonian"), files.value("state", ""), cfg);
  }
  const Json now = Json::parse(fresh);
  const bool exact = cfg.value("deterministic_sum", false) || cfg.value("workers", 1) <= 1;
  Json a = old["result"], b = now["result"];
  const Json old_csv = a.value("csv", Json()), new_csv = b.value("csv", Json());
  a.erase("csv");
  b.erase("csv");
  bool ok = same_value(a, b, exact ? 0.0 : 1e-12);
  if (exact && old.value("mode", "") != "scaling-sweep") ok = ok && old_csv == new_csv;
  std::cerr << (ok ? "replay: result reproduced" : "replay: result differs") << (exact ? " (exact)\n" : " (1e-12 relative)\n");
  if (!o.out.empty()) write_file(o.out, fresh);
  return ok ? 0 : kExitFailure;
}

int run(const Options& o) {
  if (!o.replay.empty()) return replay(o);
  if (o.mode.empty()) throw UsageError("--mode is required");
  std::string report;
  std::string csv;
  if (o.mode == "scaling-sweep") {
    Json cfg = Json::object();
    if (o.sweep_n) cfg["n"] = *o.sweep_n;
    if (o.sweep_lmin) cfg["min_depth"] = *o.sweep_lmin;
    if (o.sweep_lmax) cfg["max_depth"] = *o.sweep_lmax;
    if (o.sweep_c) cfg["c"] = *o.sweep_c;
    if (o.target_mse) cfg["target_mse"] = *o.target_mse;
    char* out = nullptr;
    check(pp_scaling_sweep(cfg.dump().c_str(), &out));
    report = take(out);
  } else {
    if (o.circuit.empty() || o.hamiltonian.empty()) throw UsageError("--circuit and --hamiltonian are required");
    if (!o.lambda) throw UsageError("--lambda is required");
    report = run_problem(o.circuit, o.hamiltonian, o.state, config_from(o));
  }
  const Json parsed = Json::parse(report);
  std::cerr << parsed.value("summary", "") << "\n";
  for (const auto& w : parsed["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";

  const bool has_csv = parsed["result"].contains("csv");
  if (has_csv) {
    csv = parsed["result"]["csv"].get<std::string>();
    if (!o.out.empty()) write_file(o.out, csv);
    if (!o.report.empty()) write_file(o.report, report);
    if (o.out.empty() && o.report.empty()) std::cout << csv;
  } else if (!o.out.empty()) {
    write_file(o.out, report);
  } else {
    std::cout << report;
  }
  if (o.mode == "oracle-check" && parsed["result"].value("untruncated", false) &&
      !parsed["result"].value("agree", false)) {
    return kExitFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy circuit mean values by truncated Pauli-path sums"};
  Options o;
  app.add_option("--mode", o.mode, "estimate | choose-m | mse-benchmark | oracle-check | path-dump | scaling-sweep")
      ->check(CLI::IsMember({"estimate", "choose-m", "mse-benchmark", "oracle-check", "path-dump", "scaling-sweep"}));
  app.add_option("--circuit", o.circuit, "circuit JSON");
  app.add_option("--hamiltonian", o.hamiltonian, "Hamiltonian JSON");
  app.add_option("--state", o.state, "initial state JSON (default |0...0>)");
  app.add_option("--params", o.params, "symbol -> radians JSON; drawn from --seed when absent");
  app.add_option("--lambda", o.lambda, "depolarizing rate in [0, 1]");
  app.add_option("--trunc-m", o.trunc_m, "weight cutoff M, or 'full'");
  app.add_option("--target-mse", o.target_mse, "target mean squared error");
  app.add_option("--epsilon", o.epsilon, "absolute error for an (epsilon, delta) target");
  app.add_option("--delta", o.delta, "failure probability for an (epsilon, delta) target");
  app.add_option("--samples", o.samples, "Monte-Carlo samples");
  app.add_option("--seed,--random-seed", o.seed, "master seed");
  app.add_option("--workers", o.workers, "worker threads");
  app.add_flag("--deterministic-sum", o.deterministic_sum, "reproducible summation order");
  app.add_option("--max-paths", o.max_paths, "path cap");
  app.add_option("--out", o.out, "report file (CSV for path-dump and scaling-sweep)");
  app.add_option("--report", o.report, "JSON report when --out receives CSV");
  app.add_option("--replay", o.replay, "re-run a saved report and compare results");
  app.add_option("--sweep-n", o.sweep_n, "qubits for scaling-sweep");
  app.add_option("--sweep-lmin", o.sweep_lmin, "smallest depth for scaling-sweep");
  app.add_option("--sweep-lmax", o.sweep_lmax, "largest depth for scaling-sweep");
  app.add_option("--sweep-c", o.sweep_c, "constant c in lambda = c/ln L and c/L");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  try {
    return run(o);
  } catch (const CallFailed& f) {
    std::cerr << "error: " << pp_last_error() << "\n";
    return exit_code(f.status);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

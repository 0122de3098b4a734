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

#include "paulipath/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "paulipath/ansatz.hpp"
#include "paulipath/dense_oracle.hpp"
#include "paulipath/errors.hpp"
#include "paulipath/estimator.hpp"
#include "paulipath/path_engine.hpp"

namespace paulipath {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";
constexpr double kOracleTolerance = 1e-9;

void emit(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        emit(j[k], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default: out += j.dump();
  }
}

std::string to_text(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

Json parse_config(std::string_view text) {
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
}

double get_number(const Json& cfg, const char* key) {
  if (!cfg[key].is_number()) throw ValidationError(std::string("config field '") + key + "' must be a number");
  return cfg[key].get<double>();
}

std::optional<double> opt_number(const Json& cfg, const char* key) {
  if (!cfg.contains(key) || cfg[key].is_null()) return std::nullopt;
  return get_number(cfg, key);
}

std::size_t get_count(const Json& cfg, const char* key, std::size_t fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  if (!cfg[key].is_number_integer() || cfg[key].get<long long>() < 0) {
    throw ValidationError(std::string("config field '") + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(cfg[key].get<long long>());
}

std::optional<std::uint64_t> opt_seed(const Json& cfg) {
  if (!cfg.contains("seed") || cfg["seed"].is_null()) return std::nullopt;
  if (!cfg["seed"].is_number_integer() || (cfg["seed"].is_number_integer() && !cfg["seed"].is_number_unsigned() &&
                                           cfg["seed"].get<long long>() < 0)) {
    throw ValidationError("config field 'seed' must be a non-negative integer");
  }
  return cfg["seed"].get<std::uint64_t>();
}

Json stats_json(const EnumerationStats& s) {
  return Json{{"paths", s.paths},
              {"nodes", s.nodes},
              {"pruned_budget", s.pruned_budget},
              {"pruned_zero_weight", s.pruned_zero_weight},
              {"pruned_zero_overlap", s.pruned_zero_overlap}};
}

Json norm_json(const NormBound& n) { return Json{{"value", n.value}, {"kind", to_string(n.kind)}}; }

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Accuracy {
  std::optional<std::size_t> m;  // explicit or "full"
  bool full = false;
  std::optional<double> nu;
  std::optional<double> epsilon;
  std::optional<double> delta;
};

Accuracy parse_accuracy(const Json& cfg, const Circuit& circuit) {
  Accuracy a;
  if (cfg.contains("trunc_m") && !cfg["trunc_m"].is_null()) {
    const Json& t = cfg["trunc_m"];
    if (t.is_string() && t.get<std::string>() == "full") {
      a.full = true;
      a.m = untruncated_weight(circuit);
    } else if (t.is_number_integer() && t.get<long long>() >= 0) {
      a.m = static_cast<std::size_t>(t.get<long long>());
    } else {
      throw ValidationError("trunc_m must be a non-negative integer or \"full\"");
    }
  }
  a.nu = opt_number(cfg, "target_mse");
  a.epsilon = opt_number(cfg, "epsilon");
  a.delta = opt_number(cfg, "delta");
  const int given = (a.m ? 1 : 0) + (a.nu ? 1 : 0) + (a.epsilon ? 1 : 0);
  if (given > 1) throw ValidationError("give exactly one accuracy specifier: trunc_m, target_mse, or epsilon with delta");
  if (a.epsilon && !a.delta) throw ValidationError("epsilon needs delta");
  return a;
}

struct ResolvedM {
  std::size_t m;
  bool untruncated;
  std::optional<MChoice> choice;
};

ResolvedM resolve_m(const Accuracy& a, const Problem& p, double lambda, const NormBound& norm, bool required,
                    Json& warnings) {
  const Circuit& c = p.circuit;
  const std::size_t full = untruncated_weight(c);
  if (a.m) return {*a.m, *a.m >= full, std::nullopt};
  std::optional<AccuracyTarget> target;
  if (a.nu) target = MseTarget{*a.nu};
  if (a.epsilon) target = EpsDelta{*a.epsilon, *a.delta};
  if (!target) {
    if (required) throw ValidationError("an accuracy specifier is required: trunc_m, target_mse, or epsilon with delta");
    return {full, true, std::nullopt};
  }
  MChoice choice = choose_m(lambda, norm.value, *target, c.depth() + 1, p.hamiltonian.term_count(), full);
  for (const auto& n : choice.notes) warnings.push_back(n);
  return {choice.m, choice.untruncated || choice.m >= full, choice};
}

Json choice_json(const MChoice& c) {
  Json notes = Json::array();
  for (const auto& n : c.notes) notes.push_back(n);
  return Json{{"M", c.m}, {"raw", c.raw}, {"no_finite_m", c.untruncated}, {"path_ceiling", c.path_ceiling},
              {"notes", notes}};
}

// Angles from config params, or drawn from the seed when params are absent.
std::vector<double> resolve_params(const Problem& p, Json& cfg, Json& warnings) {
  const Circuit& c = p.circuit;
  ParameterAssignment a;
  if (cfg.contains("params") && !cfg["params"].is_null()) {
    Json params = cfg["params"];
    if (params.is_object() && params.contains("params") && params["params"].is_object()) params = params["params"];
    if (!params.is_object()) throw ValidationError("params must map symbol names to angles");
    for (auto it = params.begin(); it != params.end(); ++it) {
      if (!it.value().is_number()) throw ValidationError("parameter '" + it.key() + "' is not a number");
      a[it.key()] = it.value().get<double>();
    }
    for (const auto& [k, v] : a) {
      if (std::find(c.symbols().begin(), c.symbols().end(), k) == c.symbols().end()) {
        warnings.push_back("parameter '" + k + "' does not appear in the circuit");
      }
    }
  } else if (!c.symbols().empty()) {
    const auto seed = opt_seed(cfg);
    if (!seed) throw ValidationError("circuit has named parameters: supply params or a seed to draw them");
    a = draw_parameters(c, *seed);
    Json drawn = Json::object();
    for (const auto& s : c.symbols()) drawn[s] = a[s];
    cfg["params"] = drawn;
    cfg["params_drawn"] = true;
  }
  return resolve_angles(c, a);
}

std::string describe_path(const PathView& v, const Circuit& c) {
  std::string d = "H[" + v.word(v.length() - 1).str() + "]";
  for (const auto& a : v.atoms()) d += "*" + a.describe(c);
  d += "*rho[" + v.word(0).str() + "]";
  return d;
}

Json run_estimate(const Problem& p, Json& cfg, Json& warnings, std::string& summary) {
  const double lambda = get_number(cfg, "lambda");
  check_noise_rate(lambda);
  const std::vector<double> angles = resolve_params(p, cfg, warnings);
  const Accuracy acc = parse_accuracy(cfg, p.circuit);
  const NormBound norm = norm_bound(p.hamiltonian);
  const ResolvedM rm = resolve_m(acc, p, lambda, norm, true, warnings);

  EstimateOptions opt;
  opt.workers = get_count(cfg, "workers", 1);
  opt.deterministic = cfg.value("deterministic_sum", false);
  opt.limits.max_paths = get_count(cfg, "max_paths", opt.limits.max_paths);
  opt.delta = acc.delta;
  const EstimateReport r = estimate(p.circuit, p.hamiltonian, p.state, angles, lambda, rm.m, opt);
  for (const auto& w : r.warnings) warnings.push_back(w);

  Json res{{"value", r.value},
           {"identity_offset", r.identity_offset},
           {"paths_used", r.paths_used},
           {"M", r.max_weight},
           {"untruncated", rm.untruncated},
           {"lambda", r.lambda},
           {"norm", norm_json(r.norm)},
           {"mse_bound", r.mse_bound},
           {"mse_bound_exp", r.mse_bound_exp},
           {"eps_delta", r.eps_delta ? Json{{"epsilon", r.eps_delta->epsilon}, {"delta", r.eps_delta->delta}} : Json()},
           {"generation_certified", r.generation_certified},
           {"stats", stats_json(r.stats)}};
  if (rm.choice) res["m_choice"] = choice_json(*rm.choice);
  cfg["_seconds"] = r.seconds;
  summary = "M = " + std::to_string(r.max_weight) + (r.generation_certified ? ", certified MSE <= " : ", MSE bound (not certified) ") +
            sci(r.mse_bound) + ", value = " + sci(r.value);
  if (r.eps_delta) summary += ", |error| <= " + sci(r.eps_delta->epsilon) + " with probability >= " + sci(1 - r.eps_delta->delta);
  return res;
}

Json run_choose_m(const Problem& p, Json& cfg, Json& warnings, std::string& summary) {
  const double lambda = get_number(cfg, "lambda");
  const Accuracy acc = parse_accuracy(cfg, p.circuit);
  if (acc.m) throw ValidationError("choose-m takes target_mse or epsilon with delta, not trunc_m");
  const NormBound norm = norm_bound(p.hamiltonian);
  const ResolvedM rm = resolve_m(acc, p, lambda, norm, true, warnings);
  const double m = static_cast<double>(rm.m);
  const bool cert = generation_check(effected_words(p.circuit), p.circuit.num_qubits());
  if (!cert) warnings.push_back("generation check failed: the chosen M carries no certificate for this circuit");
  Json res = choice_json(*rm.choice);
  res["lambda"] = lambda;
  res["norm"] = norm_json(norm);
  res["target"] = acc.nu ? Json{{"mse", *acc.nu}} : Json{{"epsilon", *acc.epsilon}, {"delta", *acc.delta}};
  res["mse_bound"] = std::pow(1 - lambda, 2 * m) * norm.value * norm.value;
  res["mse_bound_exp"] = std::exp(-2 * lambda * m) * norm.value * norm.value;
  res["generation_certified"] = cert;
  summary = "M = " + std::to_string(rm.m) + (cert ? ", certified MSE <= " : ", MSE bound (not certified) ") +
            sci(res["mse_bound"].get<double>());
  return res;
}

Json run_mse(const Problem& p, Json& cfg, Json& warnings, std::string& summary) {
  const double lambda = get_number(cfg, "lambda");
  const auto seed = opt_seed(cfg);
  if (!seed) throw ValidationError("mse-benchmark needs a seed");
  const std::size_t samples = get_count(cfg, "samples", 0);
  if (samples < 2) throw ValidationError("mse-benchmark needs samples >= 2");
  const Accuracy acc = parse_accuracy(cfg, p.circuit);
  const NormBound norm = norm_bound(p.hamiltonian);
  const ResolvedM rm = resolve_m(acc, p, lambda, norm, true, warnings);
  MseBenchmarkOptions opt;
  opt.workers = get_count(cfg, "workers", 1);
  opt.limits.max_paths = get_count(cfg, "max_paths", opt.limits.max_paths);
  const MseBenchmarkReport r = mse_benchmark(p.circuit, p.hamiltonian, p.state, lambda, rm.m, samples, *seed, opt);
  for (const auto& w : r.warnings) warnings.push_back(w);
  Json seeds = Json::array();
  for (auto s : r.sample_seeds) seeds.push_back(s);
  Json res{{"M", rm.m},
           {"lambda", lambda},
           {"samples", r.samples},
           {"mean", r.mean},
           {"standard_error", r.standard_error},
           {"bound", r.bound},
           {"bound_exp", r.bound_exp},
           {"pass", r.pass},
           {"certified", r.certified},
           {"paths", r.paths},
           {"norm", norm_json(r.norm)},
           {"seed", r.seed},
           {"sample_seeds", seeds}};
  cfg["_seconds"] = r.seconds;
  summary = "M = " + std::to_string(rm.m) + ", empirical MSE " + sci(r.mean) + " +- " + sci(r.standard_error) +
            (r.certified ? ", certified MSE <= " : ", bound (not certified) ") + sci(r.bound) +
            (r.pass ? " [pass]" : " [FAIL]");
  return res;
}

Json run_oracle_check(const Problem& p, Json& cfg, Json& warnings, std::string& summary) {
  const double lambda = get_number(cfg, "lambda");
  check_noise_rate(lambda);
  if (p.circuit.num_qubits() > dense::kDefaultCap) {
    throw OracleCapError("oracle-check is limited to " + std::to_string(dense::kDefaultCap) + " qubits");
  }
  const std::vector<double> angles = resolve_params(p, cfg, warnings);
  const Accuracy acc = parse_accuracy(cfg, p.circuit);
  const NormBound norm = norm_bound(p.hamiltonian);
  const ResolvedM rm = resolve_m(acc, p, lambda, norm, false, warnings);
  EstimateOptions opt;
  opt.workers = get_count(cfg, "workers", 1);
  opt.deterministic = cfg.value("deterministic_sum", false);
  opt.limits.max_paths = get_count(cfg, "max_paths", opt.limits.max_paths);
  const EstimateReport r = estimate(p.circuit, p.hamiltonian, p.state, angles, lambda, rm.m, opt);
  for (const auto& w : r.warnings) warnings.push_back(w);
  const double oracle = dense::noisy_mean_value(p.circuit, p.hamiltonian, p.state, angles, lambda);
  const double diff = std::abs(r.value - oracle);
  Json res{{"estimate", r.value},   {"oracle", oracle},           {"abs_diff", diff},
           {"M", rm.m},             {"untruncated", rm.untruncated}, {"tolerance", kOracleTolerance},
           {"agree", diff <= kOracleTolerance},
           {"mse_bound", r.mse_bound}, {"generation_certified", r.generation_certified},
           {"stats", stats_json(r.stats)}};
  summary = "estimate " + sci(r.value) + ", oracle " + sci(oracle) + ", |diff| " + sci(diff) +
            (rm.untruncated ? (diff <= kOracleTolerance ? " [agree]" : " [DISAGREE]") : " (truncated)");
  return res;
}

Json run_path_dump(const Problem& p, Json& cfg, Json& warnings, std::string& summary) {
  const double lambda = get_number(cfg, "lambda");
  check_noise_rate(lambda);
  const std::vector<double> angles = resolve_params(p, cfg, warnings);
  const Accuracy acc = parse_accuracy(cfg, p.circuit);
  const NormBound norm = norm_bound(p.hamiltonian);
  const ResolvedM rm = resolve_m(acc, p, lambda, norm, true, warnings);
  EnumerationLimits limits;
  limits.max_paths = get_count(cfg, "max_paths", 10'000'000);
  const Enumerator en(p.circuit, p.hamiltonian, p.state, rm.m, angles, limits);
  std::string csv = "weight,factor_description,contribution\n";
  char buf[64];
  const EnumerationStats stats = en.run([&](const PathView& v) {
    const double c = damping(v.total_weight(), lambda) * v.value();
    std::snprintf(buf, sizeof buf, ",%.17g\n", c);
    csv += std::to_string(v.total_weight()) + "," + describe_path(v, p.circuit) + buf;
  });
  summary = "M = " + std::to_string(rm.m) + ", " + std::to_string(stats.paths) + " paths dumped";
  return Json{{"M", rm.m}, {"lambda", lambda}, {"stats", stats_json(stats)}, {"csv", csv}};
}

}  // namespace

Problem Problem::from_json_text(std::string_view circuit, std::string_view hamiltonian,
                                std::optional<std::string_view> state) {
  Problem p;
  p.circuit = Circuit::from_json_text(circuit);
  require_valid(p.circuit);
  p.hamiltonian = Hamiltonian::from_json_text(hamiltonian);
  const std::size_t n = p.circuit.num_qubits();
  if (p.hamiltonian.num_qubits() != n) {
    throw DimensionError("Hamiltonian has " + std::to_string(p.hamiltonian.num_qubits()) + " qubits, circuit has " +
                         std::to_string(n));
  }
  p.state = state ? SparseDensity::from_json_text(*state) : SparseDensity::ground(n);
  if (p.state.num_qubits() != n) {
    throw DimensionError("state has " + std::to_string(p.state.num_qubits()) + " qubits, circuit has " +
                         std::to_string(n));
  }
  return p;
}

std::string problem_info(const Problem& p) {
  Json symbols = Json::array();
  for (const auto& s : p.circuit.symbols()) symbols.push_back(s);
  Json j{{"n", p.circuit.num_qubits()},
         {"depth", p.circuit.depth()},
         {"rotations", p.circuit.rotation_count()},
         {"symbols", symbols},
         {"shared_parameters", p.circuit.has_shared_parameters()},
         {"hamiltonian_terms", p.hamiltonian.term_count()},
         {"identity_coefficient", p.hamiltonian.identity_coefficient()},
         {"coefficient_one_norm", p.hamiltonian.one_norm()},
         {"state_entries", p.state.entry_count()},
         {"state_symmetrization_adjustment", p.state.symmetrization_adjustment()},
         {"generation_certified", generation_check(effected_words(p.circuit), p.circuit.num_qubits())}};
  return to_text(j);
}

std::string run_report(const Problem& problem, std::string_view config_json) {
  Json cfg = parse_config(config_json);
  if (!cfg.contains("mode") || !cfg["mode"].is_string()) throw ValidationError("config needs a string 'mode'");
  const std::string mode = cfg["mode"].get<std::string>();
  if (!cfg.contains("lambda")) throw ValidationError("config needs 'lambda'");

  Json warnings = Json::array();
  if (problem.state.symmetrization_adjustment() > 1e-9) {
    warnings.push_back("state was not Hermitian; symmetrized with adjustment " +
                       sci(problem.state.symmetrization_adjustment()));
  }
  std::string summary;
  const auto t0 = std::chrono::steady_clock::now();
  Json result;
  if (mode == "estimate") {
    result = run_estimate(problem, cfg, warnings, summary);
  } else if (mode == "choose-m") {
    result = run_choose_m(problem, cfg, warnings, summary);
  } else if (mode == "mse-benchmark") {
    result = run_mse(problem, cfg, warnings, summary);
  } else if (mode == "oracle-check") {
    result = run_oracle_check(problem, cfg, warnings, summary);
  } else if (mode == "path-dump") {
    result = run_path_dump(problem, cfg, warnings, summary);
  } else {
    throw ValidationError("unknown mode '" + mode + "'");
  }
  cfg.erase("_seconds");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Json report{{"tool", "paulipath"},         {"version", kVersion}, {"mode", mode},
              {"config", cfg},               {"result", result},    {"timing", Json{{"seconds", secs}}},
              {"warnings", warnings},        {"summary", summary}};
  return to_text(report);
}

std::string scaling_sweep_report(std::string_view config_json) {
  const Json cfg = parse_config(config_json);
  SweepConfig sc;
  sc.n = get_count(cfg, "n", sc.n);
  sc.min_depth = get_count(cfg, "min_depth", sc.min_depth);
  sc.max_depth = get_count(cfg, "max_depth", sc.max_depth);
  if (auto c = opt_number(cfg, "c")) sc.c = *c;
  if (auto nu = opt_number(cfg, "target_mse")) sc.nu = *nu;
  const SweepReport r = scaling_sweep(sc);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"family", row.family}, {"L", row.depth}, {"lambda", row.lambda}, {"M", row.m},
                        {"nodes", row.nodes},   {"paths", row.paths}});
  }
  auto fit = [](const SweepFit& f) {
    return Json{{"loglog_slope", f.loglog_slope},
                {"loglog_rms", f.loglog_rms},
                {"semilog_slope", f.semilog_slope},
                {"semilog_rms", f.semilog_rms}};
  };
  const std::string summary = "c/lnL: polynomial exponent " + sci(r.log_family.loglog_slope) +
                              "; c/L: exponential rate " + sci(r.inverse_family.semilog_slope) + " per layer";
  Json report{{"tool", "paulipath"},
              {"version", kVersion},
              {"mode", "scaling-sweep"},
              {"config", Json{{"n", sc.n}, {"min_depth", sc.min_depth}, {"max_depth", sc.max_depth}, {"c", sc.c},
                              {"target_mse", sc.nu}}},
              {"result", Json{{"norm", r.norm}, {"rows", rows}, {"fit_c_over_lnL", fit(r.log_family)},
                              {"fit_c_over_L", fit(r.inverse_family)}, {"csv", sweep_csv(r)}}},
              {"warnings", Json::array()},
              {"summary", summary}};
  // Row timings are wall-clock and excluded from the result block.
  Json timing = Json::array();
  for (const auto& row : r.rows) timing.push_back(row.seconds);
  report["timing"] = Json{{"row_seconds", timing}};
  return to_text(report);
}

std::string dump_json17(std::string_view json_text) {
  try {
    return to_text(Json::parse(json_text));
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("not valid JSON: ") + e.what());
  }
}

}  // namespace paulipath

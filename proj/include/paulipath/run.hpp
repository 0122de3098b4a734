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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "paulipath/circuit.hpp"
#include "paulipath/observable.hpp"

namespace paulipath {

struct Problem {
  Circuit circuit;
  Hamiltonian hamiltonian;
  SparseDensity state;

  /// Parses and validates all three documents; the state defaults to |0...0>.
  static Problem from_json_text(std::string_view circuit, std::string_view hamiltonian,
                                std::optional<std::string_view> state = std::nullopt);
};

/// Summary of a loaded problem as JSON text (sizes, symbols, generation check).
std::string problem_info(const Problem& problem);

/// Runs one mode described by a JSON config and returns the report as JSON text.
///
/// Config keys: mode (estimate | choose-m | mse-benchmark | oracle-check | path-dump),
/// params, lambda, trunc_m (int or "full"), target_mse, epsilon, delta, samples,
/// seed, workers, deterministic_sum, max_paths, files (echoed only).
/// The report holds mode, config (as run, with any drawn params), result,
/// timing, warnings and a one-line summary. path-dump puts its CSV in result.csv.
std::string run_report(const Problem& problem, std::string_view config_json);

/// Scaling sweep on the adversarial ansatz. Config keys: n, min_depth,
/// max_depth, c, target_mse. The report carries rows, fits and result.csv.
std::string scaling_sweep_report(std::string_view config_json);

/// Doubles written with 17 significant digits, two-space indentation.
std::string dump_json17(std::string_view json_text);

}  // namespace paulipath

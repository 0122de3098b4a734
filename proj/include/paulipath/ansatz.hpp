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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paulipath/circuit.hpp"
#include "paulipath/observable.hpp"

namespace paulipath {

/// Adversarial ansatz: R_Z on every qubit, R_X on every qubit, then L-2 layers
/// holding a single R_X on qubit 0. Symbols are "z<q>", "x<q>" and "r<l>" (1-based).
/// Requires L >= 2.
Circuit adversarial_ansatz(std::size_t n, std::size_t depth);

/// Z + Y on qubit 0.
Hamiltonian adversarial_observable(std::size_t n);

/// Noiseless value cos(2a) - sin(2a), a = half the sum of the qubit-0 R_X angles.
double adversarial_exact_value(const Circuit& circuit, std::span<const double> angles);

struct SweepConfig {
  std::size_t n = 2;
  std::size_t min_depth = 4;
  std::size_t max_depth = 12;
  double c = 1.0;
  double nu = 1e-2;
};

struct SweepRow {
  std::string family;  // "c/lnL" or "c/L"
  std::size_t depth;
  double lambda;
  std::size_t m;
  std::uint64_t nodes;
  std::uint64_t paths;
  double seconds;
};

/// Least-squares fits of ln(nodes + 1): against ln L (polynomial) and against L (exponential).
struct SweepFit {
  double loglog_slope = 0, loglog_rms = 0;
  double semilog_slope = 0, semilog_rms = 0;
};

struct SweepReport {
  SweepConfig config;
  double norm = 0;
  std::vector<SweepRow> rows;
  SweepFit log_family;
  SweepFit inverse_family;
};

/// For lambda = c/ln L and lambda = c/L, picks M from the MSE target (no L+1
/// floor) and records the enumeration work on the adversarial ansatz.
SweepReport scaling_sweep(const SweepConfig& config);

SweepFit fit_work(const std::vector<SweepRow>& rows);

/// "family,L,lambda,M,nodes,paths,seconds" plus one line per row.
std::string sweep_csv(const SweepReport& report);

}  // namespace paulipath

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
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "paulipath/circuit.hpp"
#include "paulipath/observable.hpp"
#include "paulipath/path_engine.hpp"

namespace paulipath {

using ParameterAssignment = std::map<std::string, double>;

inline constexpr std::size_t kDefaultOracleQubits = 10;

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// coeff(H, s_L) * prod(atoms) * Tr(s_0 rho).
double path_value(const PauliPath& path, std::span<const double> angles, const Hamiltonian& h, const SparseDensity& rho);

/// (1 - lambda)^|s|. Throws ValidationError unless 0 <= lambda <= 1.
double damping(const PauliPath& path, double lambda);
double damping(std::size_t total_weight, double lambda);

void check_noise_rate(double lambda);

/// Weight cap that keeps every path: n * (L + 1).
std::size_t untruncated_weight(const Circuit& circuit);

struct EpsDelta {
  double epsilon;
  double delta;
};

struct EstimateOptions {
  std::size_t workers = 1;
  /// Per-subtree compensated sums combined in subtree order; identical bits for any worker count.
  bool deterministic = true;
  EnumerationLimits limits;
  /// When set, an (epsilon, delta) certificate is reported for this delta.
  std::optional<double> delta;
  std::size_t exact_norm_qubits = kDefaultExactNormQubits;
};

struct EstimateReport {
  double value = 0;
  double identity_offset = 0;
  std::uint64_t paths_used = 0;
  std::size_t max_weight = 0;
  bool untruncated = false;
  double lambda = 0;
  NormBound norm{0, NormKind::ExactDense};
  /// (1-lambda)^{2M} ||H||^2 and exp(-2 lambda M) ||H||^2.
  double mse_bound = 0;
  double mse_bound_exp = 0;
  std::optional<EpsDelta> eps_delta;
  bool generation_certified = false;
  EnumerationStats stats;
  double seconds = 0;
  std::size_t workers = 1;
  bool deterministic = true;
  std::vector<std::string> warnings;
};

/// Truncated noisy estimate c_I + sum over paths with |s| <= M of damping * value.
EstimateReport estimate(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                        std::span<const double> angles, double lambda, std::size_t max_weight,
                        const EstimateOptions& options = {});

struct MseTarget {
  double nu;
};

using AccuracyTarget = std::variant<MseTarget, EpsDelta>;

struct MChoice {
  std::size_t m = 0;
  /// lambda = 0: no finite M certifies truncation; m is the untruncated weight.
  bool untruncated = false;
  /// Unrounded right-hand side of the inequality.
  double raw = 0;
  /// (term count) * 2^M.
  double path_ceiling = 0;
  std::vector<std::string> notes;
};

/// Smallest integer M meeting the target under exp(-2 lambda M) decay:
/// mse: M >= ln(||H||^2 / nu) / (2 lambda); (eps, delta): M >= ln(||H|| / (eps sqrt(delta))) / lambda.
/// Results below floor are raised to floor.
MChoice choose_m(double lambda, double norm, const AccuracyTarget& target, std::size_t floor = 0,
                 std::size_t term_count = 1, std::size_t untruncated_m = 0);

struct MseBenchmarkOptions {
  std::size_t workers = 1;
  std::size_t oracle_qubits = kDefaultOracleQubits;
  std::size_t exact_norm_qubits = kDefaultExactNormQubits;
  EnumerationLimits limits{50'000'000, std::numeric_limits<std::uint64_t>::max()};
};

struct MseBenchmarkReport {
  std::size_t samples = 0;
  double mean = 0;
  double standard_error = 0;
  double bound = 0;      // (1-lambda)^{2M} ||H||^2
  double bound_exp = 0;  // exp(-2 lambda M) ||H||^2
  bool pass = false;     // mean <= bound + 3 standard errors
  bool certified = false;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> sample_seeds;
  std::uint64_t paths = 0;
  NormBound norm{0, NormKind::ExactDense};
  double seconds = 0;
  std::vector<std::string> warnings;
};

/// Seed of sample k derived from the master seed.
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t k);

/// One uniform [0, 2pi) draw per symbol from a seed; fixed angles are kept.
ParameterAssignment draw_parameters(const Circuit& circuit, std::uint64_t seed);

/// Monte-Carlo E|L~ - L^|^2 against the dense oracle. Rejects shared parameters;
/// throws OracleCapError when n exceeds the oracle cap.
MseBenchmarkReport mse_benchmark(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho, double lambda,
                                 std::size_t max_weight, std::size_t samples, std::uint64_t seed,
                                 const MseBenchmarkOptions& options = {});

struct CrossTermResult {
  double mean = 0;
  double standard_error = 0;
  std::size_t samples = 0;
  bool certified = false;
};

/// Monte-Carlo mean of f(s) f(s') over uniform angles.
CrossTermResult cross_term_check(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                                 const PauliPath& a, const PauliPath& b, std::size_t samples, std::uint64_t seed);

}  // namespace paulipath

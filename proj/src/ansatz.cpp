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

#include "paulipath/ansatz.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "paulipath/errors.hpp"
#include "paulipath/estimator.hpp"
#include "paulipath/path_engine.hpp"

namespace paulipath {

Circuit adversarial_ansatz(std::size_t n, std::size_t depth) {
  if (n < 1) throw ValidationError("ansatz needs at least one qubit");
  if (depth < 2) throw ValidationError("ansatz needs at least two layers");
  std::vector<Layer> layers(depth);
  for (std::size_t q = 0; q < n; ++q) {
    layers[0].gates.emplace_back(RotationGate{PauliWord::single(n, q, Letter::Z), "z" + std::to_string(q + 1)});
    layers[1].gates.emplace_back(RotationGate{PauliWord::single(n, q, Letter::X), "x" + std::to_string(q + 1)});
  }
  for (std::size_t l = 2; l < depth; ++l) {
    layers[l].gates.emplace_back(RotationGate{PauliWord::single(n, 0, Letter::X), "r" + std::to_string(l + 1)});
  }
  return Circuit(n, std::move(layers));
}

Hamiltonian adversarial_observable(std::size_t n) {
  return Hamiltonian::build(n, {{PauliWord::single(n, 0, Letter::Z), 1.0}, {PauliWord::single(n, 0, Letter::Y), 1.0}});
}

double adversarial_exact_value(const Circuit& circuit, std::span<const double> angles) {
  const std::size_t n = circuit.num_qubits();
  if (angles.size() != 2 * n + circuit.depth() - 2) throw ValidationError("angle count does not match the ansatz");
  double sum = angles[n];
  for (std::size_t g = 2 * n; g < angles.size(); ++g) sum += angles[g];
  const double alpha = sum / 2;
  return std::cos(2 * alpha) - std::sin(2 * alpha);
}

SweepFit fit_work(const std::vector<SweepRow>& rows) {
  SweepFit fit;
  if (rows.size() < 2) return fit;
  auto least_squares = [&](auto xfun, double& slope, double& rms) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(rows.size());
    for (const auto& r : rows) {
      const double x = xfun(r), y = std::log(static_cast<double>(r.nodes) + 1.0);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = k * sxx - sx * sx;
    slope = denom == 0 ? 0 : (k * sxy - sx * sy) / denom;
    const double icpt = (sy - slope * sx) / k;
    double ss = 0;
    for (const auto& r : rows) {
      const double e = std::log(static_cast<double>(r.nodes) + 1.0) - (icpt + slope * xfun(r));
      ss += e * e;
    }
    rms = std::sqrt(ss / k);
  };
  least_squares([](const SweepRow& r) { return std::log(static_cast<double>(r.depth)); }, fit.loglog_slope, fit.loglog_rms);
  least_squares([](const SweepRow& r) { return static_cast<double>(r.depth); }, fit.semilog_slope, fit.semilog_rms);
  return fit;
}

SweepReport scaling_sweep(const SweepConfig& config) {
  if (config.min_depth < 2 || config.max_depth < config.min_depth) {
    throw ValidationError("sweep depths must satisfy 2 <= min <= max");
  }
  if (!(config.c > 0) || !(config.nu > 0)) throw ValidationError("sweep constant and target MSE must be positive");
  SweepReport report;
  report.config = config;
  const Hamiltonian h = adversarial_observable(config.n);
  const SparseDensity rho = SparseDensity::ground(config.n);
  report.norm = norm_bound(h).value;

  std::vector<SweepRow> log_rows, inv_rows;
  for (std::size_t L = config.min_depth; L <= config.max_depth; ++L) {
    const Circuit circuit = adversarial_ansatz(config.n, L);
    for (int family = 0; family < 2; ++family) {
      const double lambda = family == 0 ? config.c / std::log(static_cast<double>(L)) : config.c / static_cast<double>(L);
      if (lambda > 1) {
        throw ValidationError("lambda = " + std::to_string(lambda) + " exceeds 1 at L = " + std::to_string(L) +
                              "; lower the sweep constant");
      }
      const MChoice choice = choose_m(lambda, report.norm, MseTarget{config.nu});
      const auto t0 = std::chrono::steady_clock::now();
      const Enumerator en(circuit, h, rho, choice.m);
      const EnumerationStats stats = en.run([](const PathView&) {});
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      SweepRow row{family == 0 ? "c/lnL" : "c/L", L, lambda, choice.m, stats.nodes, stats.paths, secs};
      (family == 0 ? log_rows : inv_rows).push_back(row);
      report.rows.push_back(row);
    }
  }
  report.log_family = fit_work(log_rows);
  report.inverse_family = fit_work(inv_rows);
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "family,L,lambda,M,nodes,paths,seconds\n";
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%.17g,%zu,%llu,%llu,%.6f\n", r.family.c_str(), r.depth, r.lambda, r.m,
                  static_cast<unsigned long long>(r.nodes), static_cast<unsigned long long>(r.paths), r.seconds);
    out += buf;
  }
  return out;
}

}  // namespace paulipath

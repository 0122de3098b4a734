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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "paulipath/ansatz.hpp"
#include "paulipath/dense_oracle.hpp"
#include "paulipath/estimator.hpp"
#include "paulipath/path_engine.hpp"
#include "support.hpp"

namespace {

using namespace paulipath;
using Clock = std::chrono::steady_clock;

int failures = 0;

void verdict(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Instance {
  Circuit circuit;
  Hamiltonian h;
  SparseDensity rho;
  std::vector<double> angles;
};

// Shared by criteria 3, 4, 5 and 7.
std::vector<Instance> oracle_instances() {
  pptest::Gen g(20260101);
  std::vector<Instance> out;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + g.below(5);
    Circuit c = g.certified_circuit(n, 2 + g.below(5));
    Hamiltonian h = g.hamiltonian(n, 1 + g.below(5), g.coin());
    SparseDensity rho = g.coin() ? SparseDensity::ground(n) : g.state(n);
    auto angles = g.angles(c);
    out.push_back({std::move(c), std::move(h), std::move(rho), std::move(angles)});
  }
  return out;
}

// Closed form read off the circuit: alpha is half the sum of the X angles on qubit 0.
double ansatz_closed_form(const Circuit& c, const std::vector<double>& angles) {
  const PauliWord x0 = PauliWord::single(c.num_qubits(), 0, Letter::X);
  double alpha = 0;
  for (std::size_t g = 0; g < c.rotation_count(); ++g) {
    if (c.rotation(g).generator == x0) alpha += angles[g];
  }
  alpha /= 2;
  return std::cos(2 * alpha) - std::sin(2 * alpha);
}

void criterion1() {
  const auto t0 = Clock::now();
  pptest::Gen g(1);
  double worst = 0;
  int runs = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t L : {4, 6}) {
      const Circuit c = adversarial_ansatz(n, L);
      const Hamiltonian h = adversarial_observable(n);
      const SparseDensity rho = SparseDensity::ground(n);
      for (int t = 0; t < 100; ++t) {
        const auto angles = g.angles(c);
        const double v = estimate(c, h, rho, angles, 0, untruncated_weight(c)).value;
        worst = std::max(worst, std::abs(v - ansatz_closed_form(c, angles)));
        ++runs;
      }
    }
  }
  verdict(1, worst <= 1e-10,
          fmt("%.0f runs, max |estimate - (cos 2a - sin 2a)| = %.3e (tol 1e-10), %.2fs", runs, worst, seconds_since(t0)));
}

void criterion2() {
  const auto t0 = Clock::now();
  const std::size_t L = 6;
  const Circuit c = adversarial_ansatz(2, L);
  const Hamiltonian h = adversarial_observable(2);
  const SparseDensity rho = SparseDensity::ground(2);
  MseBenchmarkOptions opt;
  opt.workers = workers();
  const MseBenchmarkReport r = mse_benchmark(c, h, rho, 0.1, L, 10000, 2026, opt);
  const double expected = std::pow(0.9, 14);
  const double diff = std::abs(r.mean - expected);
  const bool ok = diff <= 3 * r.standard_error && diff <= 0.05 * expected;
  verdict(2, ok,
          fmt("MSE = %.6f +- %.6f over 10000 samples, expected 0.9^14 = %.6f, rel diff %.4f", r.mean, r.standard_error,
              expected, diff / expected) +
              fmt(", %.2fs", seconds_since(t0)));
}

void criterion3(const std::vector<Instance>& inst) {
  const auto t0 = Clock::now();
  double worst = 0;
  for (const auto& in : inst) {
    for (double lambda : {0.0, 0.05, 0.2}) {
      const double v = estimate(in.circuit, in.h, in.rho, in.angles, lambda, untruncated_weight(in.circuit)).value;
      const double o = dense::noisy_mean_value(in.circuit, in.h, in.rho, in.angles, lambda);
      worst = std::max(worst, std::abs(v - o));
    }
  }
  verdict(3, worst <= 1e-9,
          fmt("%.0f circuits x 3 noise rates, max |estimate - dense| = %.3e (tol 1e-9), %.2fs",
              static_cast<double>(inst.size()), worst, seconds_since(t0)));
}

void criterion4(const std::vector<Instance>& inst) {
  const auto t0 = Clock::now();
  double worst = 0;
  double paths = 0;
  for (const auto& in : inst) {
    const Enumerator en(in.circuit, in.h, in.rho, untruncated_weight(in.circuit), in.angles);
    for (double lambda : {0.05, 0.2}) {
      en.run([&](const PathView& v) {
        const PauliPath p = v.materialize();
        const double channel = dense::noisy_path_value(in.circuit, in.h, in.rho, in.angles, lambda, p.words);
        worst = std::max(worst, std::abs(channel - std::pow(1 - lambda, p.total_weight) * v.value()));
        paths += 1;
      });
    }
  }
  verdict(4, worst <= 1e-12,
          fmt("%.0f path evaluations, max |channel - (1-l)^|s| f| = %.3e (tol 1e-12), %.2fs", paths, worst,
              seconds_since(t0)));
}

void criterion5(const std::vector<Instance>& inst) {
  const auto t0 = Clock::now();
  MseBenchmarkOptions opt;
  opt.workers = workers();
  int cases = 0, bad = 0;
  double worst_ratio = 0;
  std::uint64_t seed = 500;
  for (const auto& in : inst) {
    const std::size_t L = in.circuit.depth();
    for (std::size_t m : {L + 1, L + 3, L + 5}) {
      for (double lambda : {0.05, 0.2}) {
        const MseBenchmarkReport r = mse_benchmark(in.circuit, in.h, in.rho, lambda, m, 200, ++seed, opt);
        const double bound = std::pow(1 - lambda, 2.0 * m) * r.norm.value * r.norm.value;
        ++cases;
        if (!(r.mean <= bound + 3 * r.standard_error)) ++bad;
        if (bound > 0) worst_ratio = std::max(worst_ratio, r.mean / bound);
      }
    }
  }
  verdict(5, bad == 0,
          fmt("%.0f cases (M in {L+1,L+3,L+5}, lambda in {0.05,0.2}, 200 samples), %.0f over bound + 3 SE, "
              "max MSE/bound = %.3f, %.2fs",
              cases, bad, worst_ratio, seconds_since(t0)));
}

void criterion6() {
  const auto t0 = Clock::now();
  pptest::Gen g(6);
  int pairs = 0, bad = 0;
  double worst = 0;
  while (pairs < 20) {
    const std::size_t n = 1 + g.below(3);
    const Circuit c = g.certified_circuit(n, 2 + g.below(3));
    const Hamiltonian h = g.hamiltonian(n, 2);
    const SparseDensity rho = g.state(n);
    const Enumerator en(c, h, rho, untruncated_weight(c));
    const auto paths = en.collect();
    if (paths.size() < 2) continue;
    const std::size_t a = g.below(paths.size());
    std::size_t b = g.below(paths.size() - 1);
    if (b >= a) ++b;
    const CrossTermResult r = cross_term_check(c, h, rho, paths[a], paths[b], 10000, 600 + pairs);
    const double z = r.standard_error > 0 ? std::abs(r.mean) / r.standard_error : (r.mean == 0 ? 0 : INFINITY);
    worst = std::max(worst, z);
    if (!(std::abs(r.mean) <= 4 * r.standard_error)) ++bad;
    ++pairs;
  }
  // Uncertified: one R_Z per qubit, H = Z1 + Z2. Both paths carry f = 1.
  const std::size_t n = 2;
  const Circuit cz(n, {Layer{{RotationGate{PauliWord::parse("ZI"), "a"}, RotationGate{PauliWord::parse("IZ"), "b"}}}});
  const Hamiltonian hz = Hamiltonian::build(n, {{PauliWord::parse("ZI"), 1.0}, {PauliWord::parse("IZ"), 1.0}});
  const SparseDensity rz = SparseDensity::ground(n);
  const Enumerator ez(cz, hz, rz, untruncated_weight(cz));
  const auto zp = ez.collect();
  bool violated = false;
  double cmean = 0;
  for (std::size_t i = 0; i < zp.size(); ++i) {
    for (std::size_t j = i + 1; j < zp.size(); ++j) {
      const CrossTermResult r = cross_term_check(cz, hz, rz, zp[i], zp[j], 10000, 700);
      if (std::abs(r.mean) > 4 * r.standard_error) {
        violated = true;
        cmean = r.mean;
      }
    }
  }
  const bool certified = generation_check(effected_words(cz), n);
  verdict(6, bad == 0 && violated && !certified,
          fmt("%.0f certified pairs at 10000 samples, %.0f beyond 4 SE, max |mean|/SE = %.2f; ", pairs, bad, worst) +
              "uncertified R_Z counterexample " + (violated ? "violates" : "does not violate") +
              fmt(" (mean %.3f), %.2fs", cmean, seconds_since(t0)));
}

void criterion7(const std::vector<Instance>& inst) {
  const auto t0 = Clock::now();
  int instances = 0, over = 0;
  for (const auto& in : inst) {
    const std::size_t L = in.circuit.depth();
    for (std::size_t m : {L + 1, L + 3, L + 5, untruncated_weight(in.circuit)}) {
      const Enumerator en(in.circuit, in.h, in.rho, m);
      const EnumerationStats s = en.run([](const PathView&) {});
      ++instances;
      if (static_cast<double>(s.paths) > static_cast<double>(in.h.term_count()) * std::ldexp(1.0, static_cast<int>(m))) {
        ++over;
      }
    }
  }
  int ansatz_bad = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t L = 4; L <= 10; ++L) {
      const Circuit c = adversarial_ansatz(n, L);
      const Hamiltonian h = adversarial_observable(n);
      const SparseDensity rho = SparseDensity::ground(n);
      const Enumerator en(c, h, rho, untruncated_weight(c));
      const EnumerationStats s = en.run([](const PathView&) {});
      if (s.paths != (std::uint64_t{1} << (L - 1))) ++ansatz_bad;
    }
  }
  verdict(7, over == 0 && ansatz_bad == 0,
          fmt("%.0f instances, %.0f above terms*2^M; ansatz 2^(L-1) mismatches for L=4..10, n=1..3: %.0f; ", instances,
              over, ansatz_bad) +
              fmt("%.2fs", seconds_since(t0)));
  for (double cc : {1.0, 0.25}) {
    SweepConfig cfg;
    cfg.c = cc;
    const SweepReport sw = scaling_sweep(cfg);
    std::printf("  sweep c=%.2f, n=%zu, L=%zu..%zu\n", cc, cfg.n, cfg.min_depth, cfg.max_depth);
    std::printf("    c/L:   ln(nodes+1) vs L slope %.4f (rms %.3g), vs ln L slope %.4f (rms %.3g)\n",
                sw.inverse_family.semilog_slope, sw.inverse_family.semilog_rms, sw.inverse_family.loglog_slope,
                sw.inverse_family.loglog_rms);
    std::printf("    c/lnL: ln(nodes+1) vs L slope %.4f (rms %.3g), vs ln L slope %.4f (rms %.3g)\n",
                sw.log_family.semilog_slope, sw.log_family.semilog_rms, sw.log_family.loglog_slope,
                sw.log_family.loglog_rms);
    for (const auto& row : sw.rows) {
      std::printf("      %-6s L=%2zu lambda=%.4f M=%3zu nodes=%llu paths=%llu\n", row.family.c_str(), row.depth,
                  row.lambda, row.m, static_cast<unsigned long long>(row.nodes),
                  static_cast<unsigned long long>(row.paths));
    }
  }
}

void criterion8() {
  const auto t0 = Clock::now();
  const std::size_t n = 20, L = 20;
  const double lambda = 0.2;
  pptest::Gen g(8);
  const Circuit c = g.certified_circuit(n, L);
  std::vector<HamiltonianTerm> terms;
  for (std::size_t q = 0; q < 10; ++q) {
    PauliWord zz(n);
    zz.set(2 * q, Letter::Z);
    zz.set(2 * q + 1, Letter::Z);
    terms.push_back({zz, g.uniform(-0.5, 0.5)});
    terms.push_back({PauliWord::single(n, 2 * q + 1, Letter::X), g.uniform(-0.5, 0.5)});
  }
  const Hamiltonian h = Hamiltonian::build(n, terms);
  const SparseDensity rho = SparseDensity::ground(n);
  const auto angles = g.angles(c);
  const NormBound norm = norm_bound(h);
  const MChoice choice = choose_m(lambda, norm.value, MseTarget{1e-2}, L + 1, h.term_count(), untruncated_weight(c));
  EstimateOptions opt;
  opt.workers = workers();
  const EstimateReport r = estimate(c, h, rho, angles, lambda, choice.m, opt);
  const double secs = seconds_since(t0);
  const bool ok = r.generation_certified && r.mse_bound <= 1e-2 && secs <= 600;
  verdict(8, ok,
          fmt("n=20 L=20 lambda=0.2 terms=20 M=%.0f (raw %.2f, floor L+1 = 21), certified bound %.3e (exp form %.3e)",
              static_cast<double>(choice.m), choice.raw, r.mse_bound, r.mse_bound_exp) +
              fmt(", norm %.3f, value %.6f", norm.value, r.value) +
              fmt(", %.0f paths, %.2fs (limit 600s)", static_cast<double>(r.paths_used), secs) +
              (r.generation_certified ? "" : ", NOT generation-certified"));
}

}  // namespace

int main() {
  const std::vector<Instance> inst = oracle_instances();
  criterion1();
  criterion2();
  criterion3(inst);
  criterion4(inst);
  criterion5(inst);
  criterion6();
  criterion7(inst);
  criterion8();
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

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

#include "paulipath/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "paulipath/dense_oracle.hpp"
#include "paulipath/errors.hpp"

namespace paulipath {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Runs body(i) for i in [0, count) on up to `workers` threads; rethrows the first failure.
template <typename Body>
void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i, w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> damping_table(double lambda, std::size_t max_weight) {
  std::vector<double> t(max_weight + 1, 1.0);
  for (std::size_t w = 1; w <= max_weight; ++w) t[w] = std::pow(1.0 - lambda, static_cast<double>(w));
  return t;
}

bool certified(const Circuit& circuit) { return generation_check(effected_words(circuit), circuit.num_qubits()); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::vector<double> draw_angles(const Circuit& circuit, std::uint64_t seed) {
  return resolve_angles(circuit, draw_parameters(circuit, seed));
}

// Path table evaluated at many angle settings: constant part plus atom list.
struct CompiledPaths {
  std::vector<double> constant;
  std::vector<std::size_t> offset{0};
  std::vector<FactorAtom> atoms;

  double evaluate(const std::vector<double>& cos_t, const std::vector<double>& sin_t) const {
    CompensatedSum sum;
    for (std::size_t p = 0; p < constant.size(); ++p) {
      double f = constant[p];
      for (std::size_t k = offset[p]; k < offset[p + 1]; ++k) {
        const FactorAtom& a = atoms[k];
        switch (a.kind) {
          case AtomKind::Unit: f *= a.sign; break;
          case AtomKind::Cos: f *= a.sign * cos_t[a.rotation]; break;
          case AtomKind::Sin: f *= a.sign * sin_t[a.rotation]; break;
        }
      }
      sum.add(f);
    }
    return sum.value();
  }
};

}  // namespace

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

void check_noise_rate(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ValidationError("noise rate lambda must lie in [0, 1]");
}

double path_value(const PauliPath& path, std::span<const double> angles, const Hamiltonian& h, const SparseDensity& rho) {
  if (path.words.empty()) throw ValidationError("empty path");
  double f = h.coeff(path.words.back()) * overlap(rho, path.words.front());
  for (const auto& a : path.atoms) f *= a.evaluate(angles);
  return f;
}

double damping(std::size_t total_weight, double lambda) {
  check_noise_rate(lambda);
  return std::pow(1.0 - lambda, static_cast<double>(total_weight));
}

double damping(const PauliPath& path, double lambda) { return damping(path.total_weight, lambda); }

std::size_t untruncated_weight(const Circuit& circuit) { return circuit.num_qubits() * (circuit.depth() + 1); }

EstimateReport estimate(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                        std::span<const double> angles, double lambda, std::size_t max_weight,
                        const EstimateOptions& options) {
  const auto t0 = Clock::now();
  check_noise_rate(lambda);
  require_valid(circuit);
  if (angles.size() != circuit.rotation_count()) {
    throw ValidationError("expected " + std::to_string(circuit.rotation_count()) + " angles, got " +
                          std::to_string(angles.size()));
  }
  EstimateReport r;
  r.lambda = lambda;
  r.max_weight = max_weight;
  r.untruncated = max_weight >= untruncated_weight(circuit);
  r.workers = std::max<std::size_t>(1, options.workers);
  r.deterministic = options.deterministic;
  r.identity_offset = h.identity_coefficient() * rho.trace().real();
  r.norm = norm_bound(h, options.exact_norm_qubits);
  const double m = static_cast<double>(max_weight);
  r.mse_bound = std::pow(1.0 - lambda, 2.0 * m) * r.norm.value * r.norm.value;
  r.mse_bound_exp = std::exp(-2.0 * lambda * m) * r.norm.value * r.norm.value;
  r.generation_certified = certified(circuit);
  if (options.delta) {
    if (!(*options.delta > 0 && *options.delta <= 1)) throw ValidationError("delta must lie in (0, 1]");
    if (r.generation_certified) {
      r.eps_delta = EpsDelta{std::pow(1.0 - lambda, m) * r.norm.value / std::sqrt(*options.delta), *options.delta};
    } else {
      r.warnings.push_back("effected words do not generate the Pauli group; (epsilon, delta) certificate withheld");
    }
  }
  if (!r.generation_certified) {
    r.warnings.push_back("generation check failed: MSE bounds are not certified for this circuit");
  }
  if (max_weight < circuit.depth() + 1) {
    r.warnings.push_back("M = " + std::to_string(max_weight) + " is below L + 1 = " +
                         std::to_string(circuit.depth() + 1) + "; every path is truncated");
  }

  r.value = r.identity_offset;
  if (lambda == 1.0 || h.term_count() == 0) {
    r.seconds = seconds_since(t0);
    return r;
  }

  const Enumerator en(circuit, h, rho, max_weight, std::vector<double>(angles.begin(), angles.end()), options.limits);
  const std::vector<double> damp = damping_table(lambda, max_weight);
  const auto tasks = en.tasks(r.stats);

  std::vector<EnumerationStats> worker_stats(r.workers);
  CompensatedSum total;
  total.add(r.identity_offset);
  if (options.deterministic) {
    std::vector<double> partial(tasks.size(), 0.0);
    parallel_for(tasks.size(), r.workers, [&](std::size_t i, std::size_t w) {
      CompensatedSum s;
      en.run_task(tasks[i], [&](const PathView& v) { s.add(damp[v.total_weight()] * v.value()); }, worker_stats[w]);
      partial[i] = s.value();
    });
    for (double p : partial) total.add(p);
  } else {
    std::vector<double> partial(r.workers, 0.0);
    parallel_for(tasks.size(), r.workers, [&](std::size_t i, std::size_t w) {
      double s = 0;
      en.run_task(tasks[i], [&](const PathView& v) { s += damp[v.total_weight()] * v.value(); }, worker_stats[w]);
      partial[w] += s;
    });
    for (double p : partial) total.add(p);
  }
  for (const auto& s : worker_stats) r.stats += s;
  r.paths_used = r.stats.paths;
  r.value = total.value();
  r.seconds = seconds_since(t0);
  return r;
}

MChoice choose_m(double lambda, double norm, const AccuracyTarget& target, std::size_t floor, std::size_t term_count,
                 std::size_t untruncated_m) {
  check_noise_rate(lambda);
  if (!(norm >= 0) || !std::isfinite(norm)) throw ValidationError("norm bound must be finite and non-negative");
  MChoice c;
  if (const auto* t = std::get_if<MseTarget>(&target)) {
    if (!(t->nu > 0)) throw ValidationError("target MSE must be positive");
  } else {
    const auto& ed = std::get<EpsDelta>(target);
    if (!(ed.epsilon > 0)) throw ValidationError("epsilon must be positive");
    if (!(ed.delta > 0 && ed.delta <= 1)) throw ValidationError("delta must lie in (0, 1]");
  }
  if (lambda == 0.0) {
    c.untruncated = true;
    c.m = std::max(untruncated_m, floor);
    c.raw = std::numeric_limits<double>::infinity();
    c.notes.push_back("lambda = 0: no finite M certifies truncation; running untruncated");
  } else {
    double log_ratio;
    if (const auto* t = std::get_if<MseTarget>(&target)) {
      log_ratio = std::log(norm * norm / t->nu) / (2.0 * lambda);
    } else {
      const auto& ed = std::get<EpsDelta>(target);
      log_ratio = std::log(norm / (ed.epsilon * std::sqrt(ed.delta))) / lambda;
    }
    c.raw = log_ratio;
    if (!(log_ratio > 0)) {
      c.m = 0;
      c.notes.push_back("target already met at M = 0");
    } else {
      c.m = static_cast<std::size_t>(std::ceil(log_ratio - 1e-12));
    }
    if (c.m < floor) {
      c.notes.push_back("M = " + std::to_string(c.m) + " raised to the L + 1 floor " + std::to_string(floor));
      c.m = floor;
    }
  }
  c.path_ceiling = static_cast<double>(term_count) * std::pow(2.0, static_cast<double>(c.m));
  return c;
}

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t k) { return splitmix64(splitmix64(master) ^ k); }

ParameterAssignment draw_parameters(const Circuit& circuit, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  ParameterAssignment a;
  for (const auto& s : circuit.symbols()) a[s] = uniform(rng);
  return a;
}

MseBenchmarkReport mse_benchmark(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho, double lambda,
                                 std::size_t max_weight, std::size_t samples, std::uint64_t seed,
                                 const MseBenchmarkOptions& options) {
  const auto t0 = Clock::now();
  check_noise_rate(lambda);
  require_valid(circuit);
  if (circuit.has_shared_parameters()) {
    throw ValidationError("MSE benchmark needs independent angles; the circuit shares a parameter symbol between gates");
  }
  if (circuit.num_qubits() > options.oracle_qubits) {
    throw OracleCapError("MSE benchmark needs the dense oracle, limited to " + std::to_string(options.oracle_qubits) +
                         " qubits; problem has " + std::to_string(circuit.num_qubits()) +
                         ". Use estimate with its certified bounds instead");
  }
  if (samples < 2) throw ValidationError("MSE benchmark needs at least 2 samples");

  MseBenchmarkReport r;
  r.samples = samples;
  r.seed = seed;
  r.norm = norm_bound(h, options.exact_norm_qubits);
  const double m = static_cast<double>(max_weight);
  r.bound = std::pow(1.0 - lambda, 2.0 * m) * r.norm.value * r.norm.value;
  r.bound_exp = std::exp(-2.0 * lambda * m) * r.norm.value * r.norm.value;
  r.certified = certified(circuit);
  if (!r.certified) r.warnings.push_back("generation check failed: the bound is not certified for this circuit");
  if (circuit.has_fixed_angles()) r.warnings.push_back("fixed angles are held constant; only named parameters are sampled");

  // The path set does not depend on the angles, so it is enumerated once.
  CompiledPaths table;
  const double offset = h.identity_coefficient() * rho.trace().real();
  if (lambda < 1.0 && h.term_count() > 0) {
    const Enumerator en(circuit, h, rho, max_weight, {}, options.limits);
    const std::vector<double> damp = damping_table(lambda, max_weight);
    en.run([&](const PathView& v) {
      table.constant.push_back(damp[v.total_weight()] * v.h_coeff() * v.overlap());
      table.atoms.insert(table.atoms.end(), v.atoms().begin(), v.atoms().end());
      table.offset.push_back(table.atoms.size());
    });
  }
  r.paths = table.constant.size();

  r.sample_seeds.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) r.sample_seeds[k] = sample_seed(seed, k);
  std::vector<double> sq(samples);
  parallel_for(samples, options.workers, [&](std::size_t k, std::size_t) {
    const std::vector<double> angles = draw_angles(circuit, r.sample_seeds[k]);
    std::vector<double> c(angles.size()), s(angles.size());
    for (std::size_t g = 0; g < angles.size(); ++g) {
      c[g] = std::cos(angles[g]);
      s[g] = std::sin(angles[g]);
    }
    const double approx = offset + table.evaluate(c, s);
    const double exact = dense::noisy_mean_value(circuit, h, rho, angles, lambda, options.oracle_qubits);
    sq[k] = (approx - exact) * (approx - exact);
  });

  CompensatedSum sum;
  for (double v : sq) sum.add(v);
  r.mean = sum.value() / static_cast<double>(samples);
  CompensatedSum var;
  for (double v : sq) var.add((v - r.mean) * (v - r.mean));
  r.standard_error = std::sqrt(var.value() / static_cast<double>(samples - 1) / static_cast<double>(samples));
  r.pass = r.mean <= r.bound + 3.0 * r.standard_error;
  r.seconds = seconds_since(t0);
  return r;
}

CrossTermResult cross_term_check(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                                 const PauliPath& a, const PauliPath& b, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw ValidationError("cross-term check needs at least 2 samples");
  CrossTermResult r;
  r.samples = samples;
  r.certified = certified(circuit);
  std::vector<double> prod(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const std::vector<double> angles = draw_angles(circuit, sample_seed(seed, k));
    prod[k] = path_value(a, angles, h, rho) * path_value(b, angles, h, rho);
  }
  CompensatedSum sum;
  for (double v : prod) sum.add(v);
  r.mean = sum.value() / static_cast<double>(samples);
  CompensatedSum var;
  for (double v : prod) var.add((v - r.mean) * (v - r.mean));
  r.standard_error = std::sqrt(var.value() / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return r;
}

}  // namespace paulipath

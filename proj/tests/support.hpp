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

// Generators and a tiny matrix oracle shared by the test binaries.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "paulipath/circuit.hpp"
#include "paulipath/observable.hpp"
#include "paulipath/pauli.hpp"

namespace pptest {

using paulipath::Circuit;
using paulipath::CliffordGate;
using paulipath::Hamiltonian;
using paulipath::Layer;
using paulipath::Letter;
using paulipath::PauliWord;
using paulipath::RotationGate;
using paulipath::SparseDensity;
using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline constexpr double kTwoPi = 2 * std::numbers::pi;

// Letter matrices written out by hand; no library code involved.
inline Mat letter_matrix(char c) {
  Mat m(2, 2);
  const Cx i(0, 1);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  }
  return out;
}

// Qubit 0 is the leftmost factor, i.e. the most significant index bit.
inline Mat string_matrix(const std::string& s) {
  Mat m = Mat::Identity(1, 1);
  for (char c : s) m = kron(m, letter_matrix(c));
  return m;
}

inline double hs(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace().real(); }

inline Mat embed_1q(const Mat& g, std::size_t n, std::size_t q) {
  Mat m = Mat::Identity(1, 1);
  for (std::size_t k = 0; k < n; ++k) m = kron(m, k == q ? g : Mat::Identity(2, 2));
  return m;
}

inline Mat cnot_matrix(std::size_t n, std::size_t control, std::size_t target) {
  const std::size_t dim = std::size_t{1} << n;
  Mat m = Mat::Zero(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const bool c = (b >> (n - 1 - control)) & 1;
    const std::size_t out = c ? b ^ (std::size_t{1} << (n - 1 - target)) : b;
    m(out, b) = 1;
  }
  return m;
}

inline Mat clifford_matrix(const CliffordGate& g, std::size_t n) {
  const double r = 1 / std::sqrt(2.0);
  Mat h(2, 2), s(2, 2);
  h << r, r, r, -r;
  s << 1, 0, 0, Cx(0, 1);
  switch (g.kind) {
    case paulipath::CliffordKind::H: return embed_1q(h, n, g.qubit);
    case paulipath::CliffordKind::S: return embed_1q(s, n, g.qubit);
    default: return cnot_matrix(n, g.qubit, g.target);
  }
}

inline Mat rotation_matrix(const PauliWord& gen, double angle) {
  const Mat p = string_matrix(gen.str());
  return std::cos(angle / 2) * Mat::Identity(p.rows(), p.cols()) - Cx(0, std::sin(angle / 2)) * p;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::size_t below(std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); }
  double uniform(double a = 0, double b = 1) { return std::uniform_real_distribution<double>(a, b)(rng); }
  bool coin(double p = 0.5) { return uniform() < p; }

  std::string word_string(std::size_t n, bool allow_identity = true) {
    static const char kLetters[] = "IXYZ";
    for (;;) {
      std::string s(n, 'I');
      for (auto& c : s) c = kLetters[below(4)];
      if (allow_identity || s != std::string(n, 'I')) return s;
    }
  }
  PauliWord word(std::size_t n, bool allow_identity = true) { return PauliWord::parse(word_string(n, allow_identity)); }

  // One layer of gates on disjoint qubits: 1- and 2-qubit rotations, H, S and CNOT.
  Layer layer(std::size_t n, std::size_t& symbol, bool cliffords) {
    static const Letter kNonId[] = {Letter::X, Letter::Y, Letter::Z};
    std::vector<std::size_t> free(n);
    for (std::size_t q = 0; q < n; ++q) free[q] = q;
    std::shuffle(free.begin(), free.end(), rng);
    Layer l;
    std::size_t k = 0;
    while (k < free.size()) {
      const std::size_t left = free.size() - k;
      const double u = uniform();
      if (u < 0.15) {
        ++k;  // idle qubit
      } else if (u < 0.55 || (!cliffords && left < 2)) {
        l.gates.emplace_back(
            RotationGate{PauliWord::single(n, free[k], kNonId[below(3)]), "t" + std::to_string(++symbol)});
        ++k;
      } else if (u < 0.75 && left >= 2) {
        PauliWord g(n);
        g.set(free[k], kNonId[below(3)]);
        g.set(free[k + 1], kNonId[below(3)]);
        l.gates.emplace_back(RotationGate{g, "t" + std::to_string(++symbol)});
        k += 2;
      } else if (!cliffords) {
        l.gates.emplace_back(
            RotationGate{PauliWord::single(n, free[k], kNonId[below(3)]), "t" + std::to_string(++symbol)});
        ++k;
      } else if (u < 0.85 && left >= 2) {
        l.gates.emplace_back(CliffordGate::cnot(free[k], free[k + 1]));
        k += 2;
      } else {
        l.gates.emplace_back(coin() ? CliffordGate::h(free[k]) : CliffordGate::s(free[k]));
        ++k;
      }
    }
    return l;
  }

  Circuit circuit(std::size_t n, std::size_t depth, bool cliffords = true) {
    std::vector<Layer> layers;
    std::size_t symbol = 0;
    for (std::size_t l = 0; l < depth; ++l) layers.push_back(layer(n, symbol, cliffords));
    return Circuit(n, std::move(layers));
  }

  // Rejection sampling on the generation check. One layer holds at most n
  // independent generators, so depth must be at least 2.
  Circuit certified_circuit(std::size_t n, std::size_t depth) {
    if (depth < 2) throw std::invalid_argument("certified circuits need depth >= 2");
    for (;;) {
      Circuit c = circuit(n, depth);
      if (c.rotation_count() > 0 && paulipath::generation_check(paulipath::effected_words(c), n)) return c;
    }
  }

  std::vector<double> angles(const Circuit& c) {
    std::vector<double> a(c.rotation_count());
    for (auto& v : a) v = uniform(0, kTwoPi);
    return a;
  }

  Hamiltonian hamiltonian(std::size_t n, std::size_t terms, bool with_identity = false) {
    std::vector<paulipath::HamiltonianTerm> t;
    for (std::size_t k = 0; k < terms; ++k) t.push_back({word(n, false), uniform(-1, 1)});
    if (with_identity) t.push_back({PauliWord(n), uniform(-1, 1)});
    return Hamiltonian::build(n, t);
  }

  std::string bits(std::size_t n) {
    std::string s(n, '0');
    for (auto& c : s) c = coin() ? '1' : '0';
    return s;
  }

  // Convex mixture of a few sparse pure states; Hermitian, PSD, trace one.
  SparseDensity state(std::size_t n, std::size_t mixture = 2, std::size_t support = 3) {
    std::vector<std::tuple<std::string, std::string, Cx>> entries;
    std::vector<double> weights(mixture);
    double total = 0;
    for (auto& w : weights) total += (w = uniform(0.1, 1));
    for (std::size_t m = 0; m < mixture; ++m) {
      std::map<std::string, Cx> amps;
      for (std::size_t k = 0; k < support; ++k) amps[bits(n)] += Cx(uniform(-1, 1), uniform(-1, 1));
      double norm = 0;
      for (const auto& [b, a] : amps) norm += std::norm(a);
      const double scale = weights[m] / total / norm;
      for (const auto& [kb, ka] : amps) {
        for (const auto& [bb, ba] : amps) entries.emplace_back(kb, bb, scale * ka * std::conj(ba));
      }
    }
    return SparseDensity::from_entries(n, entries);
  }
};

// Dense rho from the sparse entries, qubit 0 most significant.
inline Mat density_matrix(const SparseDensity& rho) {
  const std::size_t n = rho.num_qubits();
  Mat m = Mat::Zero(std::size_t{1} << n, std::size_t{1} << n);
  auto index = [n](const std::vector<std::uint64_t>& bits) {
    std::size_t i = 0;
    for (std::size_t q = 0; q < n; ++q) i = (i << 1) | static_cast<std::size_t>(SparseDensity::bit(bits, q));
    return i;
  };
  for (const auto& e : rho.entries()) m(index(e.ket), index(e.bra)) += e.value;
  return m;
}

}  // namespace pptest

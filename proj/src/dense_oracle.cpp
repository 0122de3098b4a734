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

#include "paulipath/dense_oracle.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "paulipath/errors.hpp"

namespace paulipath::dense {

namespace {

using C = std::complex<double>;
using M2 = Eigen::Matrix2cd;
using M4 = Eigen::Matrix4cd;

M2 letter_matrix(Letter l) {
  M2 m;
  switch (l) {
    case Letter::I: m << 1, 0, 0, 1; break;
    case Letter::X: m << 0, 1, 1, 0; break;
    case Letter::Y: m << 0, C(0, -1), C(0, 1), 0; break;
    case Letter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

M2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  M2 m;
  m << r, r, r, -r;
  return m;
}

M2 phase_gate() {
  M2 m;
  m << 1, 0, 0, C(0, 1);
  return m;
}

// Local index = 2 * control bit + target bit.
M4 cnot() {
  M4 m = M4::Zero();
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw OracleCapError("dense oracle limited to " + std::to_string(cap) + " qubits, problem has " + std::to_string(n) +
                         "; use the estimator's property checks instead");
  }
}

Eigen::Index dim_of(std::size_t n) { return static_cast<Eigen::Index>(std::size_t{1} << n); }

std::size_t bit_of(std::size_t n, std::size_t q) { return std::size_t{1} << (n - 1 - q); }

// m <- G m with G acting on qubit q.
void left_apply(Matrix& m, std::size_t n, std::size_t q, const M2& g) {
  const std::size_t b = bit_of(n, q);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t i0 = 0; i0 < dim; ++i0) {
    if (i0 & b) continue;
    const auto r0 = static_cast<Eigen::Index>(i0), r1 = static_cast<Eigen::Index>(i0 | b);
    const Eigen::RowVectorXcd a = m.row(r0), c = m.row(r1);
    m.row(r0) = g(0, 0) * a + g(0, 1) * c;
    m.row(r1) = g(1, 0) * a + g(1, 1) * c;
  }
}

// m <- G m with G acting on (q0, q1), q0 the high local bit.
void left_apply(Matrix& m, std::size_t n, std::size_t q0, std::size_t q1, const M4& g) {
  const std::size_t b0 = bit_of(n, q0), b1 = bit_of(n, q1);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & (b0 | b1)) continue;
    const Eigen::Index r[4] = {static_cast<Eigen::Index>(base), static_cast<Eigen::Index>(base | b1),
                               static_cast<Eigen::Index>(base | b0), static_cast<Eigen::Index>(base | b0 | b1)};
    Eigen::Matrix<C, 4, Eigen::Dynamic> rows(4, m.cols());
    for (int k = 0; k < 4; ++k) rows.row(k) = m.row(r[k]);
    const Eigen::Matrix<C, 4, Eigen::Dynamic> out = g * rows;
    for (int k = 0; k < 4; ++k) m.row(r[k]) = out.row(k);
  }
}

// m <- exp(-i angle/2 gen) m.
void left_apply_rotation(Matrix& m, std::size_t n, const PauliWord& gen, double angle) {
  Matrix sm = m;
  for (std::size_t q = 0; q < n; ++q) {
    if (gen.at(q) != Letter::I) left_apply(sm, n, q, letter_matrix(gen.at(q)));
  }
  m = std::cos(angle / 2) * m - C(0, std::sin(angle / 2)) * sm;
}

void left_apply_layer(Matrix& m, std::size_t n, const Circuit& circuit, std::size_t layer,
                      std::span<const double> angles) {
  std::size_t g = circuit.first_rotation_of_layer(layer);
  for (const auto& gate : circuit.layers()[layer].gates) {
    if (const auto* r = std::get_if<RotationGate>(&gate)) {
      left_apply_rotation(m, n, r->generator, angles[g++]);
      continue;
    }
    const auto& c = std::get<CliffordGate>(gate);
    switch (c.kind) {
      case CliffordKind::H: left_apply(m, n, c.qubit, hadamard()); break;
      case CliffordKind::S: left_apply(m, n, c.qubit, phase_gate()); break;
      case CliffordKind::CNOT: left_apply(m, n, c.qubit, c.target, cnot()); break;
    }
  }
}

void check_angles(const Circuit& circuit, std::span<const double> angles) {
  if (angles.size() != circuit.rotation_count()) {
    throw ValidationError("expected " + std::to_string(circuit.rotation_count()) + " angles, got " +
                          std::to_string(angles.size()));
  }
}

double trace_product(const Matrix& a, const Matrix& b) {
  // Tr(a b) without forming the product.
  return (a.transpose().cwiseProduct(b)).sum().real();
}

PauliWord word_from_index(std::size_t index, std::size_t n) {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(n, 'I');
  for (std::size_t q = n; q-- > 0;) {
    s[q] = kLetters[index & 3];
    index >>= 2;
  }
  return PauliWord::parse(s);
}

struct Transfer {
  std::size_t n, count;
  std::vector<PauliWord> words;
  std::vector<double> h_coeff;   // Tr(H S_b) / 2^n
  std::vector<double> overlaps;  // Tr(S_a rho)
  std::vector<Eigen::MatrixXd> layers;  // (a, b): Tr(S_b U S_a U^dagger) / 2^n
};

Transfer build_transfer(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                        std::span<const double> angles) {
  Transfer t;
  t.n = circuit.num_qubits();
  t.count = std::size_t{1} << (2 * t.n);
  const double norm = static_cast<double>(std::size_t{1} << t.n);
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < t.count; ++k) {
    t.words.push_back(word_from_index(k, t.n));
    mats.push_back(word_matrix(t.words.back()));
  }
  const Matrix hm = hamiltonian_matrix(h);
  const DenseState r = DenseState::from_sparse(rho, t.n);
  for (std::size_t k = 0; k < t.count; ++k) {
    t.h_coeff.push_back(trace_product(hm, mats[k]) / norm);
    t.overlaps.push_back(trace_product(mats[k], r.matrix()));
  }
  for (std::size_t l = 0; l < circuit.depth(); ++l) {
    const Matrix u = layer_unitary(circuit, l, angles);
    Eigen::MatrixXd tm(static_cast<Eigen::Index>(t.count), static_cast<Eigen::Index>(t.count));
    for (std::size_t a = 0; a < t.count; ++a) {
      const Matrix moved = u * mats[a] * u.adjoint();
      for (std::size_t b = 0; b < t.count; ++b) {
        tm(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = trace_product(mats[b], moved) / norm;
      }
    }
    t.layers.push_back(std::move(tm));
  }
  return t;
}

}  // namespace

DenseState::DenseState(std::size_t n, std::size_t cap) : n_(n) {
  check_cap(n, cap);
  m_ = Matrix::Zero(dim_of(n), dim_of(n));
  m_(0, 0) = 1;
}

DenseState DenseState::from_sparse(const SparseDensity& rho, std::size_t cap) {
  const std::size_t n = rho.num_qubits();
  DenseState s(n, cap);
  s.m_.setZero();
  for (const auto& e : rho.entries()) {
    std::size_t ket = 0, bra = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (SparseDensity::bit(e.ket, q)) ket |= bit_of(n, q);
      if (SparseDensity::bit(e.bra, q)) bra |= bit_of(n, q);
    }
    s.m_(static_cast<Eigen::Index>(ket), static_cast<Eigen::Index>(bra)) += e.value;
  }
  return s;
}

Matrix word_matrix(const PauliWord& w) {
  Matrix m = Matrix::Ones(1, 1);
  for (std::size_t q = 0; q < w.size(); ++q) {
    const M2 l = letter_matrix(w.at(q));
    // m (x) l: the new qubit becomes the least significant bit.
    Matrix next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * l;
    }
    m = std::move(next);
  }
  return m;
}

Matrix hamiltonian_matrix(const Hamiltonian& h) {
  const std::size_t n = h.num_qubits();
  Matrix m = h.identity_coefficient() * Matrix::Identity(dim_of(n), dim_of(n));
  for (const auto& t : h.terms()) m += t.coeff * word_matrix(t.word);
  return m;
}

void apply_depolarizing(Matrix& m, std::size_t n, double lambda) {
  if (lambda < 0 || lambda > 1) throw ValidationError("noise rate must lie in [0, 1]");
  if (lambda == 0) return;
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t b = bit_of(n, q);
    Matrix out = (1 - lambda) * m;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        if (((i ^ j) & b) != 0) continue;
        const std::size_t i0 = i & ~b, j0 = j & ~b;
        const C traced = m(static_cast<Eigen::Index>(i0), static_cast<Eigen::Index>(j0)) +
                         m(static_cast<Eigen::Index>(i0 | b), static_cast<Eigen::Index>(j0 | b));
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += 0.5 * lambda * traced;
      }
    }
    m = std::move(out);
  }
}

void apply_depolarizing(DenseState& state, double lambda) { apply_depolarizing(state.matrix(), state.num_qubits(), lambda); }

Matrix layer_unitary(const Circuit& circuit, std::size_t layer, std::span<const double> angles) {
  check_angles(circuit, angles);
  const std::size_t n = circuit.num_qubits();
  Matrix u = Matrix::Identity(dim_of(n), dim_of(n));
  left_apply_layer(u, n, circuit, layer, angles);
  return u;
}

void apply_layer(DenseState& state, const Circuit& circuit, std::size_t layer, std::span<const double> angles) {
  check_angles(circuit, angles);
  const std::size_t n = state.num_qubits();
  Matrix m = state.matrix();
  left_apply_layer(m, n, circuit, layer, angles);
  Matrix a = m.adjoint();
  left_apply_layer(a, n, circuit, layer, angles);
  state.matrix() = a.adjoint();
}

double noisy_mean_value(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                        std::span<const double> angles, double lambda, std::size_t cap) {
  check_angles(circuit, angles);
  DenseState state = DenseState::from_sparse(rho, cap);
  for (std::size_t l = 0; l < circuit.depth(); ++l) {
    apply_depolarizing(state, lambda);
    apply_layer(state, circuit, l, angles);
  }
  apply_depolarizing(state, lambda);
  return trace_product(hamiltonian_matrix(h), state.matrix());
}

double noisy_path_value(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                        std::span<const double> angles, double lambda, const std::vector<PauliWord>& words,
                        std::size_t cap) {
  check_angles(circuit, angles);
  const std::size_t n = circuit.num_qubits();
  check_cap(n, cap);
  if (words.size() != circuit.depth() + 1) throw ValidationError("path length does not match circuit depth");
  const double norm = static_cast<double>(std::size_t{1} << n);
  std::vector<Matrix> s;
  for (const auto& w : words) s.push_back(word_matrix(w));

  Matrix last = s.back();
  apply_depolarizing(last, n, lambda);
  double value = trace_product(hamiltonian_matrix(h), last) / norm;
  for (std::size_t i = 1; i <= circuit.depth(); ++i) {
    Matrix prev = s[i - 1];
    apply_depolarizing(prev, n, lambda);
    const Matrix u = layer_unitary(circuit, i - 1, angles);
    value *= trace_product(s[i], u * prev * u.adjoint()) / norm;
  }
  value *= trace_product(s.front(), DenseState::from_sparse(rho, cap).matrix());
  return value;
}

std::vector<DensePath> nonzero_paths(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                                     std::span<const double> angles, double tol, std::size_t cap) {
  check_angles(circuit, angles);
  check_cap(circuit.num_qubits(), cap);
  const Transfer t = build_transfer(circuit, h, rho, angles);
  const std::size_t L = circuit.depth();
  std::vector<DensePath> out;
  std::vector<std::size_t> idx(L + 1);
  auto walk = [&](auto&& self, std::size_t level, double acc) -> void {
    if (level == 0) {
      const double v = acc * t.overlaps[idx[0]];
      if (std::abs(v) <= tol) return;
      DensePath p;
      for (std::size_t k : idx) p.words.push_back(t.words[k]);
      p.value = v;
      out.push_back(std::move(p));
      return;
    }
    const auto& tm = t.layers[level - 1];
    for (std::size_t a = 0; a < t.count; ++a) {
      const double f = tm(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(idx[level]));
      if (std::abs(f) < 1e-15) continue;
      idx[level - 1] = a;
      self(self, level - 1, acc * f);
    }
  };
  for (std::size_t b = 0; b < t.count; ++b) {
    if (std::abs(t.h_coeff[b]) < 1e-15) continue;
    idx[L] = b;
    walk(walk, L, t.h_coeff[b]);
  }
  return out;
}

std::vector<DensePath> all_paths(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                                 std::span<const double> angles, std::size_t cap) {
  check_angles(circuit, angles);
  const std::size_t n = circuit.num_qubits(), L = circuit.depth();
  check_cap(n, cap);
  if (2 * n * (L + 1) > 24) throw OracleCapError("exhaustive path listing limited to 4^12 paths");
  const Transfer t = build_transfer(circuit, h, rho, angles);
  const std::size_t total = std::size_t{1} << (2 * n * (L + 1));
  std::vector<DensePath> out;
  out.reserve(total);
  std::vector<std::size_t> idx(L + 1);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i <= L; ++i) {
      idx[i] = c % t.count;
      c /= t.count;
    }
    double v = t.h_coeff[idx[L]] * t.overlaps[idx[0]];
    for (std::size_t i = 1; i <= L; ++i) {
      v *= t.layers[i - 1](static_cast<Eigen::Index>(idx[i - 1]), static_cast<Eigen::Index>(idx[i]));
    }
    DensePath p;
    for (std::size_t k : idx) p.words.push_back(t.words[k]);
    p.value = v;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace paulipath::dense

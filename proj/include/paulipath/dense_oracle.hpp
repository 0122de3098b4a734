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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "paulipath/circuit.hpp"
#include "paulipath/observable.hpp"
#include "paulipath/pauli.hpp"

// Reference density-matrix simulator. Deliberately shares nothing with the
// Pauli algebra beyond reading letters; every operator is an explicit matrix.
// Qubit 0 is the most significant bit of a basis index.
namespace paulipath::dense {

using Matrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultCap = 10;

class DenseState {
 public:
  /// Throws OracleCapError when n > cap.
  DenseState(std::size_t n, std::size_t cap = kDefaultCap);
  static DenseState from_sparse(const SparseDensity& rho, std::size_t cap = kDefaultCap);

  std::size_t num_qubits() const { return n_; }
  Matrix& matrix() { return m_; }
  const Matrix& matrix() const { return m_; }

 private:
  std::size_t n_;
  Matrix m_;
};

/// 2^n x 2^n matrix of a Pauli word (Kronecker product of letter matrices).
Matrix word_matrix(const PauliWord& w);

/// Dense H including its identity component.
Matrix hamiltonian_matrix(const Hamiltonian& h);

/// (1 - lambda) m + lambda Tr_q(m) (x) I/2 on each qubit in turn.
void apply_depolarizing(Matrix& m, std::size_t n, double lambda);
void apply_depolarizing(DenseState& state, double lambda);

/// Unitary of one layer; angles indexed by global rotation number.
Matrix layer_unitary(const Circuit& circuit, std::size_t layer, std::span<const double> angles);

/// state <- U state U^dagger for one layer.
void apply_layer(DenseState& state, const Circuit& circuit, std::size_t layer, std::span<const double> angles);

/// Tr(H N(U_L N(... U_1 N(rho)))) with noise before every layer and before H.
double noisy_mean_value(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                        std::span<const double> angles, double lambda, std::size_t cap = kDefaultCap);

/// Contribution of one path with the channel inserted between the dense layer traces:
/// Tr(H N(s_L))/2^n * prod_i Tr(s_i U_i N(s_{i-1}) U_i^dagger)/2^n * Tr(s_0 rho).
double noisy_path_value(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                        std::span<const double> angles, double lambda, const std::vector<PauliWord>& words,
                        std::size_t cap = kDefaultCap);

struct DensePath {
  std::vector<PauliWord> words;
  double value;
};

/// Every path whose noiseless contribution exceeds tol in magnitude, found by
/// walking the dense layer transfer matrices. Practical for n <= 3.
std::vector<DensePath> nonzero_paths(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                                     std::span<const double> angles, double tol = 1e-12, std::size_t cap = 4);

/// All 4^{n(L+1)} paths evaluated one by one, zero ones included. Practical for n, L <= 2.
std::vector<DensePath> all_paths(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho,
                                 std::span<const double> angles, std::size_t cap = 2);

}  // namespace paulipath::dense

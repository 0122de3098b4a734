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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "paulipath/pauli.hpp"

namespace paulipath {

inline constexpr std::size_t kDefaultTermCap = 1'000'000;
inline constexpr std::size_t kDefaultEntryCap = 1'000'000;
inline constexpr std::size_t kDefaultExactNormQubits = 12;

struct HamiltonianTerm {
  PauliWord word;
  double coeff;
};

/// Real linear combination of Pauli words, stored as a trie with one letter
/// per edge so a coefficient lookup walks exactly n nodes. The identity
/// component is kept aside as a scalar and never appears in the trie.
class Hamiltonian {
 public:
  Hamiltonian() = default;

  /// Duplicate words are summed; terms that sum to zero are dropped.
  /// Throws DimensionError on mixed sizes, ValidationError on non-finite coefficients.
  static Hamiltonian build(std::size_t n, const std::vector<HamiltonianTerm>& terms,
                           std::size_t term_cap = kDefaultTermCap);
  static Hamiltonian from_json_text(std::string_view text, std::size_t term_cap = kDefaultTermCap);

  std::size_t num_qubits() const { return n_; }
  /// Number of non-identity terms (trie leaves).
  std::size_t term_count() const { return terms_.size(); }
  double identity_coefficient() const { return identity_; }
  /// Sum of |c| over non-identity terms.
  double one_norm() const { return one_norm_; }

  /// Coefficient of w; 0 when absent. The identity word returns the identity coefficient.
  double coeff(const PauliWord& w) const;

  /// Non-identity terms in trie order (letters ordered I < X < Y < Z, qubit 0 first).
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  std::size_t trie_node_count() const { return nodes_.size(); }

 private:
  struct Node {
    std::array<std::int32_t, 4> child{-1, -1, -1, -1};
    double coeff = 0.0;
  };

  std::size_t n_ = 0;
  double identity_ = 0.0;
  double one_norm_ = 0.0;
  std::vector<Node> nodes_;
  std::vector<HamiltonianTerm> terms_;
};

struct DensityEntry {
  std::vector<std::uint64_t> ket;  // bit q = qubit q
  std::vector<std::uint64_t> bra;
  std::complex<double> value;
};

/// rho = sum value |ket><bra| over a sparse set of computational-basis pairs.
class SparseDensity {
 public:
  SparseDensity() = default;

  /// |0...0><0...0|.
  static SparseDensity ground(std::size_t n);

  /// Entries given as (ket string, bra string, value). Hermitian part is taken
  /// (rho + rho^dagger)/2; the largest adjustment is reported via symmetrization_adjustment().
  /// Throws ValidationError if the trace is not 1 within 1e-9.
  static SparseDensity from_entries(std::size_t n,
                                    const std::vector<std::tuple<std::string, std::string, std::complex<double>>>& entries,
                                    std::size_t entry_cap = kDefaultEntryCap);
  static SparseDensity from_json_text(std::string_view text, std::size_t entry_cap = kDefaultEntryCap);

  std::size_t num_qubits() const { return n_; }
  std::size_t entry_count() const { return entries_.size(); }
  const std::vector<DensityEntry>& entries() const { return entries_; }
  double symmetrization_adjustment() const { return adjustment_; }
  std::complex<double> trace() const;

  /// Ket/bra bit of qubit q.
  static int bit(const std::vector<std::uint64_t>& bits, std::size_t q) {
    return static_cast<int>((bits[q >> 6] >> (q & 63)) & 1u);
  }

 private:
  std::size_t n_ = 0;
  std::vector<DensityEntry> entries_;
  double adjustment_ = 0.0;
};

/// Tr(w rho) for an unnormalized Pauli word. Throws ValidationError if the
/// imaginary residue exceeds 1e-12 (non-Hermitian state).
double overlap(const SparseDensity& rho, const PauliWord& w);
/// Same, on packed bit planes.
double overlap_bits(const SparseDensity& rho, std::span<const std::uint64_t> x, std::span<const std::uint64_t> z);

enum class NormKind { CoefficientOneNorm, ExactDense };

std::string to_string(NormKind kind);

struct NormBound {
  double value;
  NormKind kind;
};

/// Bound on the operator norm of H minus its identity component. Exact dense
/// eigenvalues for n <= exact_threshold, otherwise the coefficient 1-norm.
NormBound norm_bound(const Hamiltonian& h, std::size_t exact_threshold = kDefaultExactNormQubits);

}  // namespace paulipath

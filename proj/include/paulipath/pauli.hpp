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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paulipath {

/// Single-qubit Pauli letter. The numeric value is the (x, z) bit pair
/// packed as x | (z << 1), so X = (1,0), Z = (0,1), Y = (1,1).
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(Letter l);
Letter letter_from_char(char c);

/// Element of {+1, +i, -1, -i}, stored as the exponent of i (mod 4).
class Phase {
 public:
  constexpr Phase() = default;
  static constexpr Phase from_exponent(int k) { return Phase(static_cast<std::uint8_t>(((k % 4) + 4) % 4)); }
  static constexpr Phase one() { return Phase(0); }
  static constexpr Phase i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  constexpr int exponent() const { return exp_; }
  constexpr bool is_real() const { return (exp_ & 1) == 0; }
  /// +1 or -1; only meaningful when is_real().
  constexpr int sign() const { return exp_ == 0 ? 1 : -1; }

  std::complex<double> to_complex() const;

  constexpr Phase operator*(Phase o) const { return Phase(static_cast<std::uint8_t>((exp_ + o.exp_) & 3)); }
  constexpr Phase& operator*=(Phase o) { return *this = *this * o; }
  constexpr bool operator==(const Phase&) const = default;

 private:
  constexpr explicit Phase(std::uint8_t e) : exp_(e) {}
  std::uint8_t exp_ = 0;
};

/// n-qubit tensor product of Pauli letters, stored as two packed bit planes.
/// Qubit 0 is the leftmost character of the textual form.
class PauliWord {
 public:
  PauliWord() = default;
  /// Identity on n qubits.
  explicit PauliWord(std::size_t n);

  /// Parses a string over {I,X,Y,Z}. Throws ValidationError on other characters.
  static PauliWord parse(std::string_view text);
  /// Single non-identity letter on qubit q.
  static PauliWord single(std::size_t n, std::size_t q, Letter l);
  /// From packed bit planes (ceil(n/64) limbs each, bit q = qubit q).
  static PauliWord from_bits(std::size_t n, std::span<const std::uint64_t> x, std::span<const std::uint64_t> z);

  std::string str() const;

  std::size_t size() const { return n_; }
  Letter at(std::size_t q) const;
  void set(std::size_t q, Letter l);

  std::size_t weight() const;
  bool is_identity() const;

  std::span<const std::uint64_t> x_bits() const { return x_; }
  std::span<const std::uint64_t> z_bits() const { return z_; }

  /// Multiplication modulo phase (XOR of symplectic vectors).
  PauliWord& operator^=(const PauliWord& other);

  bool operator==(const PauliWord& o) const { return n_ == o.n_ && x_ == o.x_ && z_ == o.z_; }
  bool operator<(const PauliWord& o) const;

  std::size_t hash() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
};

struct PhasedPauli {
  Phase phase;
  PauliWord word;

  bool operator==(const PhasedPauli&) const = default;
};

PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b);

/// Exact matrix product a*b as a phase times a Pauli word.
PhasedPauli multiply(const PauliWord& a, const PauliWord& b);

/// Exponent of i in the product a*b (cheaper than multiply() when the word is not needed).
int product_phase_exponent(const PauliWord& a, const PauliWord& b);

bool commutes(const PauliWord& a, const PauliWord& b);

std::size_t weight(const PauliWord& a);

/// Sub-word over the listed qubits (0-based), in the listed order.
PauliWord restrict(const PauliWord& a, std::span<const std::size_t> qubits);

/// <b| p |a> for single-qubit basis states.
std::complex<double> basis_matrix_element(Letter p, int b, int a);

}  // namespace paulipath

template <>
struct std::hash<paulipath::PauliWord> {
  std::size_t operator()(const paulipath::PauliWord& w) const noexcept { return w.hash(); }
};

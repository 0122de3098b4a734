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

#include "paulipath/pauli.hpp"

#include <algorithm>
#include <bit>

#include "paulipath/errors.hpp"

namespace paulipath {

namespace {

constexpr std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

void check_same_size(const PauliWord& a, const PauliWord& b) {
  if (a.size() != b.size()) {
    throw DimensionError("Pauli words have different qubit counts: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

}  // namespace

char to_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'I': return Letter::I;
    case 'X': return Letter::X;
    case 'Y': return Letter::Y;
    case 'Z': return Letter::Z;
    default: throw ValidationError(std::string("invalid Pauli letter '") + c + "'");
  }
}

std::complex<double> Phase::to_complex() const {
  static constexpr std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[exp_];
}

PauliWord::PauliWord(std::size_t n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliWord PauliWord::parse(std::string_view text) {
  PauliWord w(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) w.set(q, letter_from_char(text[q]));
  return w;
}

PauliWord PauliWord::single(std::size_t n, std::size_t q, Letter l) {
  PauliWord w(n);
  w.set(q, l);
  return w;
}

PauliWord PauliWord::from_bits(std::size_t n, std::span<const std::uint64_t> x, std::span<const std::uint64_t> z) {
  PauliWord w(n);
  if (x.size() != w.x_.size() || z.size() != w.z_.size()) throw DimensionError("bit plane size does not match qubit count");
  std::copy(x.begin(), x.end(), w.x_.begin());
  std::copy(z.begin(), z.end(), w.z_.begin());
  return w;
}

std::string PauliWord::str() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = to_char(at(q));
  return s;
}

Letter PauliWord::at(std::size_t q) const {
  const auto x = (x_[q >> 6] >> (q & 63)) & 1u;
  const auto z = (z_[q >> 6] >> (q & 63)) & 1u;
  return static_cast<Letter>(x | (z << 1));
}

void PauliWord::set(std::size_t q, Letter l) {
  if (q >= n_) throw ValidationError("qubit index " + std::to_string(q) + " out of range");
  const std::uint64_t bit = std::uint64_t{1} << (q & 63);
  const auto v = static_cast<unsigned>(l);
  x_[q >> 6] = (v & 1u) ? (x_[q >> 6] | bit) : (x_[q >> 6] & ~bit);
  z_[q >> 6] = (v & 2u) ? (z_[q >> 6] | bit) : (z_[q >> 6] & ~bit);
}

std::size_t PauliWord::weight() const {
  std::size_t w = 0;
  for (std::size_t k = 0; k < x_.size(); ++k) w += static_cast<std::size_t>(std::popcount(x_[k] | z_[k]));
  return w;
}

bool PauliWord::is_identity() const {
  for (std::size_t k = 0; k < x_.size(); ++k) {
    if ((x_[k] | z_[k]) != 0) return false;
  }
  return true;
}

PauliWord& PauliWord::operator^=(const PauliWord& other) {
  check_same_size(*this, other);
  for (std::size_t k = 0; k < x_.size(); ++k) {
    x_[k] ^= other.x_[k];
    z_[k] ^= other.z_[k];
  }
  return *this;
}

bool PauliWord::operator<(const PauliWord& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  if (x_ != o.x_) return x_ < o.x_;
  return z_ < o.z_;
}

std::size_t PauliWord::hash() const {
  std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
  for (std::size_t k = 0; k < x_.size(); ++k) {
    h ^= x_[k] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= z_[k] + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
  }
  return h;
}

int product_phase_exponent(const PauliWord& a, const PauliWord& b) {
  check_same_size(a, b);
  const auto ax = a.x_bits(), az = a.z_bits(), bx = b.x_bits(), bz = b.z_bits();
  int plus = 0, minus = 0;
  for (std::size_t k = 0; k < ax.size(); ++k) {
    const std::uint64_t xa = ax[k] & ~az[k], ya = ax[k] & az[k], za = ~ax[k] & az[k];
    const std::uint64_t xb = bx[k] & ~bz[k], yb = bx[k] & bz[k], zb = ~bx[k] & bz[k];
    // XY = iZ, YZ = iX, ZX = iY; reversed orders give -i.
    plus += std::popcount((xa & yb) | (ya & zb) | (za & xb));
    minus += std::popcount((ya & xb) | (za & yb) | (xa & zb));
  }
  return ((plus - minus) % 4 + 4) % 4;
}

PhasedPauli multiply(const PauliWord& a, const PauliWord& b) {
  const int e = product_phase_exponent(a, b);
  PauliWord c = a;
  c ^= b;
  return {Phase::from_exponent(e), std::move(c)};
}

PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b) {
  PhasedPauli r = multiply(a.word, b.word);
  r.phase = a.phase * b.phase * r.phase;
  return r;
}

bool commutes(const PauliWord& a, const PauliWord& b) {
  check_same_size(a, b);
  const auto ax = a.x_bits(), az = a.z_bits(), bx = b.x_bits(), bz = b.z_bits();
  int parity = 0;
  for (std::size_t k = 0; k < ax.size(); ++k) parity ^= std::popcount((ax[k] & bz[k]) ^ (az[k] & bx[k])) & 1;
  return parity == 0;
}

std::size_t weight(const PauliWord& a) { return a.weight(); }

PauliWord restrict(const PauliWord& a, std::span<const std::size_t> qubits) {
  PauliWord r(qubits.size());
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (qubits[k] >= a.size()) {
      throw ValidationError("restriction index " + std::to_string(qubits[k]) + " out of range for " +
                            std::to_string(a.size()) + " qubits");
    }
    r.set(k, a.at(qubits[k]));
  }
  return r;
}

std::complex<double> basis_matrix_element(Letter p, int b, int a) {
  using C = std::complex<double>;
  switch (p) {
    case Letter::I: return a == b ? C{1, 0} : C{0, 0};
    case Letter::X: return a != b ? C{1, 0} : C{0, 0};
    case Letter::Y:
      if (a == b) return {0, 0};
      return a == 0 ? C{0, 1} : C{0, -1};
    case Letter::Z:
      if (a != b) return {0, 0};
      return a == 0 ? C{1, 0} : C{-1, 0};
  }
  return {0, 0};
}

}  // namespace paulipath

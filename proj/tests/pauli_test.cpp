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

#include <gtest/gtest.h>

#include "paulipath/errors.hpp"
#include "paulipath/pauli.hpp"
#include "paulipath/symplectic.hpp"
#include "support.hpp"

namespace paulipath {
namespace {

using pptest::Gen;
using pptest::string_matrix;

TEST(Phase, ExponentArithmetic) {
  EXPECT_EQ((Phase::i() * Phase::i()), Phase::minus_one());
  EXPECT_EQ((Phase::minus_i() * Phase::i()), Phase::one());
  EXPECT_EQ(Phase::from_exponent(-1), Phase::minus_i());
  EXPECT_EQ(Phase::from_exponent(6), Phase::minus_one());
  EXPECT_EQ(Phase::minus_one().sign(), -1);
  EXPECT_FALSE(Phase::i().is_real());
  EXPECT_EQ(Phase::i().to_complex(), std::complex<double>(0, 1));
}

TEST(PauliWord, ParseAndPrintRoundTrip) {
  const PauliWord w = PauliWord::parse("XIZY");
  EXPECT_EQ(w.str(), "XIZY");
  EXPECT_EQ(w.size(), 4u);
  EXPECT_EQ(w.at(0), Letter::X);
  EXPECT_EQ(w.at(2), Letter::Z);
  EXPECT_EQ(w.at(3), Letter::Y);
  EXPECT_EQ(w.weight(), 3u);
  EXPECT_FALSE(w.is_identity());
  EXPECT_TRUE(PauliWord(5).is_identity());
  EXPECT_THROW(PauliWord::parse("XQ"), ValidationError);
}

TEST(PauliWord, LettersAcrossLimbBoundary) {
  PauliWord w(130);
  w.set(63, Letter::Y);
  w.set(64, Letter::X);
  w.set(129, Letter::Z);
  EXPECT_EQ(w.weight(), 3u);
  EXPECT_EQ(w.at(63), Letter::Y);
  EXPECT_EQ(w.at(64), Letter::X);
  EXPECT_EQ(w.at(129), Letter::Z);
  EXPECT_EQ(PauliWord::parse(w.str()), w);
  const PauliWord v = PauliWord::from_bits(130, w.x_bits(), w.z_bits());
  EXPECT_EQ(v, w);
}

TEST(PauliWord, FromBitsRejectsWrongLimbCount) {
  const std::vector<std::uint64_t> one{1}, two{1, 0};
  EXPECT_THROW(PauliWord::from_bits(70, one, two), DimensionError);
}

TEST(PauliWord, ProductOfMismatchedSizesThrows) {
  EXPECT_THROW(multiply(PauliWord::parse("XX"), PauliWord::parse("X")), DimensionError);
  EXPECT_THROW(commutes(PauliWord::parse("XX"), PauliWord::parse("X")), DimensionError);
}

TEST(PauliWord, SingleQubitProductTable) {
  // XY = iZ, YZ = iX, ZX = iY and reversed orders carry -i.
  EXPECT_EQ(multiply(PauliWord::parse("X"), PauliWord::parse("Y")), (PhasedPauli{Phase::i(), PauliWord::parse("Z")}));
  EXPECT_EQ(multiply(PauliWord::parse("Y"), PauliWord::parse("Z")), (PhasedPauli{Phase::i(), PauliWord::parse("X")}));
  EXPECT_EQ(multiply(PauliWord::parse("Z"), PauliWord::parse("X")), (PhasedPauli{Phase::i(), PauliWord::parse("Y")}));
  EXPECT_EQ(multiply(PauliWord::parse("Y"), PauliWord::parse("X")),
            (PhasedPauli{Phase::minus_i(), PauliWord::parse("Z")}));
  EXPECT_EQ(multiply(PauliWord::parse("Y"), PauliWord::parse("Y")), (PhasedPauli{Phase::one(), PauliWord::parse("I")}));
}

// Property: the symbolic product matches the product of explicit matrices.
TEST(PauliWordProperty, ProductMatchesMatrices) {
  Gen g(11);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + g.below(4);
    const std::string a = g.word_string(n), b = g.word_string(n);
    const PhasedPauli p = multiply(PauliWord::parse(a), PauliWord::parse(b));
    const pptest::Mat lhs = string_matrix(a) * string_matrix(b);
    const pptest::Mat rhs = p.phase.to_complex() * string_matrix(p.word.str());
    ASSERT_LT((lhs - rhs).norm(), 1e-12) << a << " * " << b;
    EXPECT_EQ(product_phase_exponent(PauliWord::parse(a), PauliWord::parse(b)), p.phase.exponent());
  }
}

TEST(PauliWordProperty, CommutationMatchesMatrices) {
  Gen g(12);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + g.below(4);
    const std::string a = g.word_string(n), b = g.word_string(n);
    const pptest::Mat ma = string_matrix(a), mb = string_matrix(b);
    const bool dense = (ma * mb - mb * ma).norm() < 1e-12;
    ASSERT_EQ(commutes(PauliWord::parse(a), PauliWord::parse(b)), dense) << a << " " << b;
  }
}

TEST(PauliWordProperty, ProductIsAssociativeWithPhases) {
  Gen g(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + g.below(70);
    const PhasedPauli a{Phase::one(), g.word(n)}, b{Phase::i(), g.word(n)}, c{Phase::minus_one(), g.word(n)};
    ASSERT_EQ((a * b) * c, a * (b * c));
    // Every word squares to the identity.
    ASSERT_EQ(multiply(a.word, a.word), (PhasedPauli{Phase::one(), PauliWord(n)}));
  }
}

TEST(PauliWord, RestrictKeepsListedQubits) {
  const PauliWord w = PauliWord::parse("XYZI");
  const std::vector<std::size_t> q{3, 1};
  EXPECT_EQ(restrict(w, q).str(), "IY");
  EXPECT_EQ(weight(w), 3u);
}

TEST(PauliWord, BasisMatrixElementsMatchLetters) {
  for (char c : std::string("IXYZ")) {
    const pptest::Mat m = pptest::letter_matrix(c);
    for (int b = 0; b < 2; ++b) {
      for (int a = 0; a < 2; ++a) EXPECT_EQ(basis_matrix_element(letter_from_char(c), b, a), m(b, a)) << c;
    }
    EXPECT_EQ(to_char(letter_from_char(c)), c);
  }
}

TEST(PauliWord, OrderingAndHashAreConsistent) {
  Gen g(14);
  for (int trial = 0; trial < 200; ++trial) {
    const PauliWord a = g.word(5), b = PauliWord::parse(a.str());
    EXPECT_EQ(a.hash(), b.hash());
    EXPECT_FALSE(a < b);
    EXPECT_FALSE(b < a);
  }
}

TEST(Symplectic, RankOfSmallSets) {
  auto rank = [](std::initializer_list<const char*> words) {
    std::vector<SymplecticVector> rows;
    for (const char* w : words) rows.emplace_back(PauliWord::parse(w));
    return gf2_rank(rows);
  };
  EXPECT_EQ(rank({"XI", "ZI", "IX", "IZ"}), 4u);
  EXPECT_EQ(rank({"XI", "ZI", "YI"}), 2u);
  EXPECT_EQ(rank({"II"}), 0u);
  EXPECT_EQ(rank({"XX", "ZZ", "YY"}), 2u);
}

// Oracle: span size by brute-force closure under XOR.
TEST(SymplecticProperty, RankMatchesSpanSize) {
  Gen g(15);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + g.below(3);
    const std::size_t k = g.below(6);
    std::vector<SymplecticVector> rows;
    std::vector<std::uint64_t> packed;
    for (std::size_t i = 0; i < k; ++i) {
      const PauliWord w = g.word(n);
      rows.emplace_back(w);
      packed.push_back(w.x_bits()[0] | (w.z_bits()[0] << n));
    }
    std::vector<std::uint64_t> span{0};
    for (auto v : packed) {
      std::vector<std::uint64_t> next = span;
      for (auto s : span) {
        if (std::find(next.begin(), next.end(), s ^ v) == next.end()) next.push_back(s ^ v);
      }
      span = next;
    }
    ASSERT_EQ(std::size_t{1} << gf2_rank(rows), span.size());
  }
}

}  // namespace
}  // namespace paulipath

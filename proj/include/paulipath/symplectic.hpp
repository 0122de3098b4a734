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
#include <cstdint>
#include <vector>

#include "paulipath/pauli.hpp"

namespace paulipath {

/// 2n-bit vector over GF(2): x-part in bits [0, n), z-part in bits [n, 2n).
class SymplecticVector {
 public:
  explicit SymplecticVector(const PauliWord& w);

  std::size_t num_bits() const { return bits_; }
  bool is_zero() const;
  const std::vector<std::uint64_t>& limbs() const { return limbs_; }

 private:
  std::size_t bits_;
  std::vector<std::uint64_t> limbs_;
};

/// Rank over GF(2) by row reduction. All vectors must have the same bit count.
std::size_t gf2_rank(const std::vector<SymplecticVector>& rows);

}  // namespace paulipath

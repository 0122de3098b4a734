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

#include "paulipath/symplectic.hpp"

#include <algorithm>

#include "paulipath/errors.hpp"

namespace paulipath {

SymplecticVector::SymplecticVector(const PauliWord& w) : bits_(2 * w.size()), limbs_((2 * w.size() + 63) / 64, 0) {
  const std::size_t n = w.size();
  for (std::size_t q = 0; q < n; ++q) {
    const auto v = static_cast<unsigned>(w.at(q));
    if (v & 1u) limbs_[q >> 6] |= std::uint64_t{1} << (q & 63);
    if (v & 2u) limbs_[(n + q) >> 6] |= std::uint64_t{1} << ((n + q) & 63);
  }
}

bool SymplecticVector::is_zero() const {
  return std::all_of(limbs_.begin(), limbs_.end(), [](std::uint64_t v) { return v == 0; });
}

std::size_t gf2_rank(const std::vector<SymplecticVector>& rows) {
  if (rows.empty()) return 0;
  const std::size_t bits = rows.front().num_bits();
  std::vector<std::vector<std::uint64_t>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.num_bits() != bits) throw DimensionError("symplectic vectors of different lengths");
    m.push_back(r.limbs());
  }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < bits && rank < m.size(); ++col) {
    const std::size_t limb = col >> 6;
    const std::uint64_t mask = std::uint64_t{1} << (col & 63);
    std::size_t pivot = rank;
    while (pivot < m.size() && !(m[pivot][limb] & mask)) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank && (m[r][limb] & mask)) {
        for (std::size_t k = limb; k < m[r].size(); ++k) m[r][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace paulipath

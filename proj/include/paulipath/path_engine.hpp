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
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "paulipath/circuit.hpp"
#include "paulipath/observable.hpp"
#include "paulipath/pauli.hpp"

namespace paulipath {

enum class AtomKind : std::uint8_t { Unit, Cos, Sin };

/// One real factor of a path contribution: sign, or sign * cos/sin of a rotation angle.
struct FactorAtom {
  AtomKind kind = AtomKind::Unit;
  std::int8_t sign = 1;
  std::uint32_t rotation = 0;  // global rotation index; unused for Unit

  double evaluate(std::span<const double> angles) const;
  /// "+cos(t3)", "-sin(L2G1)", "-1".
  std::string describe(const Circuit& circuit) const;

  bool operator==(const FactorAtom&) const = default;
};

/// Materialized path; words[i] is the word at interface i, words.back() is the H term.
/// Atoms hold every cos/sin factor and every -1 sign; +1 unit factors are omitted.
struct PauliPath {
  std::vector<PauliWord> words;
  std::vector<FactorAtom> atoms;
  std::size_t total_weight = 0;
};

struct WeightBudget {
  std::size_t max_weight;
  std::size_t spent = 0;
  /// Words still to be chosen below the one being tested.
  std::size_t layers_remaining = 0;

  /// True when a word of weight w can be added without exceeding max_weight.
  bool admits(std::size_t w) const {
    return spent + w + layers_remaining <= max_weight;
  }
};

struct Predecessor {
  PauliWord word;
  FactorAtom atom;
};

/// Backward transition through exp(-i angle/2 gen) for a successor word on the
/// gate's support. Commuting: {(succ, unit)}. Anti-commuting: (succ, cos) then
/// (w, phi*sin) with phi*w = i*gen*succ.
std::vector<Predecessor> rotation_predecessors(const PauliWord& gen, const PauliWord& succ, std::uint32_t rotation);

struct LayerPredecessor {
  PauliWord word;
  std::vector<FactorAtom> atoms;
};

/// All non-zero predecessors of succ through one layer (0-based index) that fit the budget,
/// in canonical order (cos branch before sin branch, gates in list order).
std::vector<LayerPredecessor> layer_predecessors(const Circuit& circuit, std::size_t layer, const PauliWord& succ,
                                                 const WeightBudget& budget);

struct EnumerationStats {
  std::uint64_t paths = 0;
  std::uint64_t nodes = 0;
  std::uint64_t pruned_budget = 0;
  std::uint64_t pruned_zero_weight = 0;
  std::uint64_t pruned_zero_overlap = 0;

  EnumerationStats& operator+=(const EnumerationStats& o);
};

struct EnumerationLimits {
  std::uint64_t max_paths = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
};

namespace detail {
struct PathViewAccess;
}

/// Read-only view of the path currently at the leaf of the search.
class PathView {
 public:
  std::size_t length() const { return depth_ + 1; }
  /// Word at interface i (0 = state side, depth = observable side).
  PauliWord word(std::size_t i) const;
  std::span<const FactorAtom> atoms() const { return atoms_; }
  std::size_t total_weight() const { return weight_; }
  double h_coeff() const { return h_coeff_; }
  double overlap() const { return overlap_; }
  /// Product of the atoms at the angles given to the enumerator; 1 when none were given.
  double factor() const { return factor_; }
  /// h_coeff * factor * overlap.
  double value() const { return h_coeff_ * factor_ * overlap_; }

  PauliPath materialize() const;

 private:
  friend struct detail::PathViewAccess;
  std::size_t n_ = 0, limbs_ = 0, depth_ = 0;
  const std::uint64_t* words_ = nullptr;
  std::span<const FactorAtom> atoms_;
  std::size_t weight_ = 0;
  double h_coeff_ = 0, overlap_ = 0, factor_ = 1;
};

/// A disjoint subtree of the search: one H term and one predecessor through the last layer.
struct EnumerationTask {
  std::size_t term = 0;
  std::vector<std::uint64_t> word;  // interface L-1 (x limbs then z limbs); empty when L = 0
  std::vector<FactorAtom> atoms;
  std::size_t weight = 0;  // |s_L| + |s_{L-1}|
  double factor = 1;
};

/// Backward depth-first enumeration of all non-zero Pauli paths with total
/// weight <= M. Inputs are borrowed and must outlive the enumerator.
class Enumerator {
 public:
  using Visitor = std::function<void(const PathView&)>;

  Enumerator(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho, std::size_t max_weight,
             std::vector<double> angles = {}, EnumerationLimits limits = {});
  Enumerator(Circuit&&, const Hamiltonian&, const SparseDensity&, std::size_t, std::vector<double> = {},
             EnumerationLimits = {}) = delete;
  Enumerator(const Circuit&, Hamiltonian&&, const SparseDensity&, std::size_t, std::vector<double> = {},
             EnumerationLimits = {}) = delete;
  Enumerator(const Circuit&, const Hamiltonian&, SparseDensity&&, std::size_t, std::vector<double> = {},
             EnumerationLimits = {}) = delete;
  ~Enumerator();
  Enumerator(const Enumerator&) = delete;
  Enumerator& operator=(const Enumerator&) = delete;

  std::size_t max_weight() const { return max_weight_; }

  /// Subtrees in canonical order. Budget/zero-weight prunes at the top layer are
  /// added to stats.
  std::vector<EnumerationTask> tasks(EnumerationStats& stats) const;

  /// Depth-first search below one task. Thread-compatible: distinct calls may
  /// run concurrently. Throws ResourceError when a limit is crossed.
  void run_task(const EnumerationTask& task, const Visitor& visit, EnumerationStats& stats) const;

  /// All tasks in order on the calling thread.
  EnumerationStats run(const Visitor& visit) const;

  /// Convenience: materialize every path. Intended for small instances.
  std::vector<PauliPath> collect() const;

 private:
  struct Impl;
  const Circuit& circuit_;
  const Hamiltonian& h_;
  const SparseDensity& rho_;
  std::size_t max_weight_;
  std::vector<double> angles_;
  EnumerationLimits limits_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace paulipath

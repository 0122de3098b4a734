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
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "paulipath/pauli.hpp"

namespace paulipath {

/// exp(-i * angle/2 * generator). The angle is either a named parameter or fixed.
struct RotationGate {
  PauliWord generator;
  std::variant<std::string, double> param;

  bool is_symbolic() const { return std::holds_alternative<std::string>(param); }
  const std::string& symbol() const { return std::get<std::string>(param); }
};

enum class CliffordKind { H, S, CNOT };

struct CliffordGate {
  CliffordKind kind;
  std::size_t qubit = 0;   // H/S target, CNOT control
  std::size_t target = 0;  // CNOT only

  static CliffordGate h(std::size_t q) { return {CliffordKind::H, q, 0}; }
  static CliffordGate s(std::size_t q) { return {CliffordKind::S, q, 0}; }
  static CliffordGate cnot(std::size_t control, std::size_t target) { return {CliffordKind::CNOT, control, target}; }

  std::vector<std::size_t> support() const;
};

using Gate = std::variant<RotationGate, CliffordGate>;

/// One circuit layer. Gates act on pairwise disjoint qubits, so list order
/// does not change the layer unitary.
struct Layer {
  std::vector<Gate> gates;
};

struct ValidationIssue {
  std::size_t layer;  // 0-based
  std::size_t gate;   // 0-based, position in Layer::gates
  std::string message;
};

/// Layered circuit on n qubits. Rotations are numbered globally in
/// (layer, gate) order; that index is how angles and factor atoms refer to them.
class Circuit {
 public:
  Circuit() = default;
  Circuit(std::size_t n, std::vector<Layer> layers);

  /// Parses the circuit JSON format (1-based qubits). Throws ValidationError
  /// listing every invariant violation with its layer and gate index.
  static Circuit from_json_text(std::string_view text);

  std::size_t num_qubits() const { return n_; }
  std::size_t depth() const { return layers_.size(); }
  const std::vector<Layer>& layers() const { return layers_; }

  std::size_t rotation_count() const { return rotation_layer_.size(); }
  /// Rotation gate by global index.
  const RotationGate& rotation(std::size_t g) const;
  /// Layer (0-based) holding rotation g.
  std::size_t rotation_layer(std::size_t g) const { return rotation_layer_[g]; }
  /// Global index of the first rotation in a layer.
  std::size_t first_rotation_of_layer(std::size_t layer) const { return layer_offset_[layer]; }

  /// Distinct parameter symbols in order of first appearance.
  const std::vector<std::string>& symbols() const { return symbols_; }
  bool has_shared_parameters() const { return shared_; }
  bool has_fixed_angles() const;

  /// Human-readable label of a rotation's parameter (symbol or "L<i>G<j>").
  std::string parameter_label(std::size_t g) const;

 private:
  std::size_t n_ = 0;
  std::vector<Layer> layers_;
  std::vector<std::size_t> rotation_layer_;
  std::vector<std::size_t> rotation_gate_;
  std::vector<std::size_t> layer_offset_;
  std::vector<std::string> symbols_;
  bool shared_ = false;
};

/// Every violated invariant; empty means valid.
std::vector<ValidationIssue> validate(const Circuit& circuit);

/// Throws ValidationError with all issues when validate() is non-empty.
void require_valid(const Circuit& circuit);

enum class Direction { Forward, Backward };

/// Forward: g p g^dagger. Backward: g^dagger p g. Exact, via frozen lookup tables.
PhasedPauli clifford_conjugate(const CliffordGate& g, const PhasedPauli& p, Direction direction);

/// Rotation generators conjugated back through all preceding Clifford layers,
/// phases dropped. One entry per rotation, in global rotation order.
std::vector<PauliWord> effected_words(const Circuit& circuit);

/// True iff the words generate the full Pauli group modulo phase, i.e. their
/// symplectic vectors have GF(2) rank 2n.
bool generation_check(const std::vector<PauliWord>& words, std::size_t n);

/// Resolves one angle per rotation from symbol bindings. Throws ValidationError
/// on unbound symbols or non-finite angles.
std::vector<double> resolve_angles(const Circuit& circuit, const std::map<std::string, double>& assignment);

}  // namespace paulipath

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

#include "paulipath/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "paulipath/errors.hpp"
#include "paulipath/symplectic.hpp"

namespace paulipath {

namespace {

using nlohmann::json;

std::string where(std::size_t layer, std::size_t gate) {
  return "layer " + std::to_string(layer + 1) + ", gate " + std::to_string(gate + 1);
}

struct LocalImage {
  int sign;
  const char* letters;
};

// Conjugation images in letter order I, X, Y, Z (two-qubit: control-major).
// Generated from dense 2x2 / 4x4 products and frozen; the unit tests
// regenerate them from matrices.
constexpr std::array<LocalImage, 4> kHadamard = {{{1, "I"}, {1, "Z"}, {-1, "Y"}, {1, "X"}}};
constexpr std::array<LocalImage, 4> kPhaseForward = {{{1, "I"}, {1, "Y"}, {-1, "X"}, {1, "Z"}}};
constexpr std::array<LocalImage, 4> kPhaseBackward = {{{1, "I"}, {-1, "Y"}, {1, "X"}, {1, "Z"}}};
constexpr std::array<LocalImage, 16> kCnot = {{
    {1, "II"}, {1, "IX"}, {1, "ZY"}, {1, "ZZ"},
    {1, "XX"}, {1, "XI"}, {1, "YZ"}, {-1, "YY"},
    {1, "YX"}, {1, "YI"}, {-1, "XZ"}, {1, "XY"},
    {1, "ZI"}, {1, "ZX"}, {1, "IY"}, {1, "IZ"},
}};

int table_index(Letter l) {
  switch (l) {
    case Letter::I: return 0;
    case Letter::X: return 1;
    case Letter::Y: return 2;
    case Letter::Z: return 3;
  }
  return 0;
}

int parse_qubit(const json& g, const char* key, std::size_t n, std::size_t layer, std::size_t gate,
                std::vector<ValidationIssue>& issues) {
  if (!g.contains(key) || !g[key].is_number_integer()) {
    issues.push_back({layer, gate, std::string("missing integer field '") + key + "'"});
    return -1;
  }
  const long long q = g[key].get<long long>();
  if (q < 1 || q > static_cast<long long>(n)) {
    issues.push_back({layer, gate, std::string("qubit index ") + std::to_string(q) + " outside 1.." + std::to_string(n)});
    return -1;
  }
  return static_cast<int>(q - 1);
}

std::string format_issues(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  os << "invalid circuit:";
  for (const auto& is : issues) os << "\n  " << where(is.layer, is.gate) << ": " << is.message;
  return os.str();
}

}  // namespace

std::vector<std::size_t> CliffordGate::support() const {
  if (kind == CliffordKind::CNOT) return {qubit, target};
  return {qubit};
}

Circuit::Circuit(std::size_t n, std::vector<Layer> layers) : n_(n), layers_(std::move(layers)) {
  std::set<std::string> seen;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    layer_offset_.push_back(rotation_layer_.size());
    for (std::size_t j = 0; j < layers_[l].gates.size(); ++j) {
      const auto* rot = std::get_if<RotationGate>(&layers_[l].gates[j]);
      if (rot == nullptr) continue;
      rotation_layer_.push_back(l);
      rotation_gate_.push_back(j);
      if (rot->is_symbolic()) {
        if (!seen.insert(rot->symbol()).second) {
          shared_ = true;
        } else {
          symbols_.push_back(rot->symbol());
        }
      }
    }
  }
}

const RotationGate& Circuit::rotation(std::size_t g) const {
  return std::get<RotationGate>(layers_[rotation_layer_[g]].gates[rotation_gate_[g]]);
}

bool Circuit::has_fixed_angles() const {
  for (std::size_t g = 0; g < rotation_count(); ++g) {
    if (!rotation(g).is_symbolic()) return true;
  }
  return false;
}

std::string Circuit::parameter_label(std::size_t g) const {
  const auto& r = rotation(g);
  if (r.is_symbolic()) return r.symbol();
  return "L" + std::to_string(rotation_layer_[g] + 1) + "G" + std::to_string(rotation_gate_[g] + 1);
}

Circuit Circuit::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("circuit file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw ValidationError("circuit file: field 'n' must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  if (!doc.contains("layers") || !doc["layers"].is_array()) throw ValidationError("circuit file: missing 'layers' array");

  std::vector<ValidationIssue> issues;
  std::vector<Layer> layers;
  for (std::size_t l = 0; l < doc["layers"].size(); ++l) {
    const json& jl = doc["layers"][l];
    Layer layer;
    if (!jl.is_object() || !jl.contains("gates") || !jl["gates"].is_array()) {
      issues.push_back({l, 0, "layer must be an object with a 'gates' array"});
      layers.push_back(std::move(layer));
      continue;
    }
    for (std::size_t j = 0; j < jl["gates"].size(); ++j) {
      const json& g = jl["gates"][j];
      const std::string kind = g.is_object() && g.contains("kind") && g["kind"].is_string() ? g["kind"].get<std::string>() : "";
      if (kind == "rot") {
        if (!g.contains("pauli") || !g["pauli"].is_string()) {
          issues.push_back({l, j, "rotation needs a 'pauli' string"});
          continue;
        }
        RotationGate r;
        try {
          r.generator = PauliWord::parse(g["pauli"].get<std::string>());
        } catch (const ValidationError& e) {
          issues.push_back({l, j, e.what()});
          continue;
        }
        const bool has_param = g.contains("param"), has_angle = g.contains("angle");
        if (has_param == has_angle) {
          issues.push_back({l, j, "rotation needs exactly one of 'param' or 'angle'"});
          continue;
        }
        if (has_param) {
          if (!g["param"].is_string() || g["param"].get<std::string>().empty()) {
            issues.push_back({l, j, "'param' must be a non-empty string"});
            continue;
          }
          r.param = g["param"].get<std::string>();
        } else {
          if (!g["angle"].is_number() || !std::isfinite(g["angle"].get<double>())) {
            issues.push_back({l, j, "'angle' must be a finite number"});
            continue;
          }
          r.param = g["angle"].get<double>();
        }
        layer.gates.emplace_back(std::move(r));
      } else if (kind == "H" || kind == "S") {
        const int q = parse_qubit(g, "qubit", n, l, j, issues);
        if (q < 0) continue;
        layer.gates.emplace_back(kind == "H" ? CliffordGate::h(q) : CliffordGate::s(q));
      } else if (kind == "CNOT") {
        const int c = parse_qubit(g, "control", n, l, j, issues);
        const int t = parse_qubit(g, "target", n, l, j, issues);
        if (c < 0 || t < 0) continue;
        layer.gates.emplace_back(CliffordGate::cnot(c, t));
      } else {
        issues.push_back({l, j, "unknown gate kind '" + kind + "'"});
      }
    }
    layers.push_back(std::move(layer));
  }
  // Gates that failed to parse are absent from `layers`; map positions back to the file.
  std::vector<std::vector<std::size_t>> origin(layers.size());
  Circuit c(n, std::move(layers));
  for (std::size_t l = 0; l < c.depth(); ++l) {
    std::set<std::size_t> bad;
    for (const auto& is : issues) {
      if (is.layer == l) bad.insert(is.gate);
    }
    for (std::size_t j = 0; origin[l].size() < c.layers()[l].gates.size(); ++j) {
      if (!bad.count(j)) origin[l].push_back(j);
    }
  }
  for (auto is : validate(c)) {
    is.gate = origin[is.layer][is.gate];
    issues.push_back(std::move(is));
  }
  if (!issues.empty()) {
    std::stable_sort(issues.begin(), issues.end(), [](const ValidationIssue& a, const ValidationIssue& b) {
      return a.layer != b.layer ? a.layer < b.layer : a.gate < b.gate;
    });
    throw ValidationError(format_issues(issues));
  }
  return c;
}

std::vector<ValidationIssue> validate(const Circuit& circuit) {
  std::vector<ValidationIssue> issues;
  const std::size_t n = circuit.num_qubits();
  for (std::size_t l = 0; l < circuit.depth(); ++l) {
    std::vector<int> owner(n, -1);
    const auto& gates = circuit.layers()[l].gates;
    for (std::size_t j = 0; j < gates.size(); ++j) {
      std::vector<std::size_t> support;
      if (const auto* r = std::get_if<RotationGate>(&gates[j])) {
        if (r->generator.size() != n) {
          issues.push_back({l, j, "generator has " + std::to_string(r->generator.size()) + " letters, expected " +
                                      std::to_string(n)});
          continue;
        }
        if (r->generator.is_identity()) {
          issues.push_back({l, j, "identity generator"});
          continue;
        }
        if (!r->is_symbolic() && !std::isfinite(std::get<double>(r->param))) {
          issues.push_back({l, j, "non-finite angle"});
        }
        for (std::size_t q = 0; q < n; ++q) {
          if (r->generator.at(q) != Letter::I) support.push_back(q);
        }
      } else {
        const auto& c = std::get<CliffordGate>(gates[j]);
        support = c.support();
        bool bad = false;
        for (auto q : support) {
          if (q >= n) {
            issues.push_back({l, j, "bad qubit index " + std::to_string(q + 1)});
            bad = true;
          }
        }
        if (bad) continue;
        if (c.kind == CliffordKind::CNOT && c.qubit == c.target) {
          issues.push_back({l, j, "CNOT control equals target"});
          continue;
        }
      }
      for (auto q : support) {
        if (owner[q] >= 0) {
          issues.push_back({l, j, "overlapping support at qubit " + std::to_string(q + 1) + " (shared with gate " +
                                      std::to_string(owner[q] + 1) + ")"});
        } else {
          owner[q] = static_cast<int>(j);
        }
      }
    }
  }
  return issues;
}

void require_valid(const Circuit& circuit) {
  const auto issues = validate(circuit);
  if (!issues.empty()) throw ValidationError(format_issues(issues));
}

PhasedPauli clifford_conjugate(const CliffordGate& g, const PhasedPauli& p, Direction direction) {
  PhasedPauli out = p;
  const LocalImage* image = nullptr;
  if (g.kind == CliffordKind::CNOT) {
    const int idx = 4 * table_index(p.word.at(g.qubit)) + table_index(p.word.at(g.target));
    image = &kCnot[idx];
    out.word.set(g.qubit, letter_from_char(image->letters[0]));
    out.word.set(g.target, letter_from_char(image->letters[1]));
  } else {
    const int idx = table_index(p.word.at(g.qubit));
    if (g.kind == CliffordKind::H) {
      image = &kHadamard[idx];
    } else {
      image = direction == Direction::Forward ? &kPhaseForward[idx] : &kPhaseBackward[idx];
    }
    out.word.set(g.qubit, letter_from_char(image->letters[0]));
  }
  if (image->sign < 0) out.phase *= Phase::minus_one();
  return out;
}

std::vector<PauliWord> effected_words(const Circuit& circuit) {
  std::vector<PauliWord> out;
  out.reserve(circuit.rotation_count());
  for (std::size_t g = 0; g < circuit.rotation_count(); ++g) {
    PhasedPauli p{Phase::one(), circuit.rotation(g).generator};
    for (std::size_t l = circuit.rotation_layer(g); l-- > 0;) {
      for (const auto& gate : circuit.layers()[l].gates) {
        if (const auto* c = std::get_if<CliffordGate>(&gate)) p = clifford_conjugate(*c, p, Direction::Backward);
      }
    }
    out.push_back(std::move(p.word));
  }
  return out;
}

bool generation_check(const std::vector<PauliWord>& words, std::size_t n) {
  if (n == 0) return true;
  std::vector<SymplecticVector> rows;
  rows.reserve(words.size());
  for (const auto& w : words) {
    if (w.size() != n) throw DimensionError("generation_check: word size mismatch");
    rows.emplace_back(w);
  }
  return gf2_rank(rows) == 2 * n;
}

std::vector<double> resolve_angles(const Circuit& circuit, const std::map<std::string, double>& assignment) {
  std::vector<double> angles(circuit.rotation_count());
  for (std::size_t g = 0; g < circuit.rotation_count(); ++g) {
    const auto& r = circuit.rotation(g);
    if (r.is_symbolic()) {
      auto it = assignment.find(r.symbol());
      if (it == assignment.end()) throw ValidationError("parameter '" + r.symbol() + "' is not bound");
      if (!std::isfinite(it->second)) throw ValidationError("parameter '" + r.symbol() + "' is not finite");
      angles[g] = it->second;
    } else {
      angles[g] = std::get<double>(r.param);
    }
  }
  return angles;
}

}  // namespace paulipath

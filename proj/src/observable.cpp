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

#include "paulipath/observable.hpp"

#include <bit>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <json.hpp>

#include "paulipath/errors.hpp"

namespace paulipath {

namespace {

using nlohmann::json;

int trie_slot(Letter l) {
  switch (l) {
    case Letter::I: return 0;
    case Letter::X: return 1;
    case Letter::Y: return 2;
    case Letter::Z: return 3;
  }
  return 0;
}

constexpr Letter kSlotLetter[4] = {Letter::I, Letter::X, Letter::Y, Letter::Z};

std::vector<std::uint64_t> parse_bits(const std::string& s, std::size_t n, const char* what) {
  if (s.size() != n) {
    throw DimensionError(std::string(what) + " '" + s + "' has " + std::to_string(s.size()) + " bits, expected " +
                         std::to_string(n));
  }
  std::vector<std::uint64_t> bits((n + 63) / 64, 0);
  for (std::size_t q = 0; q < n; ++q) {
    if (s[q] == '1') {
      bits[q >> 6] |= std::uint64_t{1} << (q & 63);
    } else if (s[q] != '0') {
      throw ValidationError(std::string(what) + " '" + s + "' is not a bit string");
    }
  }
  return bits;
}

json parse_document(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::size_t parse_n(const json& doc, const char* what) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw ValidationError(std::string(what) + ": field 'n' must be a positive integer");
  }
  return static_cast<std::size_t>(doc["n"].get<long long>());
}

}  // namespace

Hamiltonian Hamiltonian::build(std::size_t n, const std::vector<HamiltonianTerm>& terms, std::size_t term_cap) {
  if (terms.size() > term_cap) {
    throw ResourceError("Hamiltonian has " + std::to_string(terms.size()) + " terms, cap is " + std::to_string(term_cap));
  }
  // First pass merges duplicates in a scratch trie; second pass keeps the non-zero leaves.
  Hamiltonian scratch;
  scratch.n_ = n;
  scratch.nodes_.emplace_back();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    if (t.word.size() != n) {
      throw DimensionError("Hamiltonian term " + std::to_string(k + 1) + " has " + std::to_string(t.word.size()) +
                           " letters, expected " + std::to_string(n));
    }
    if (!std::isfinite(t.coeff)) throw ValidationError("Hamiltonian term " + std::to_string(k + 1) + " has a non-finite coefficient");
    if (t.word.is_identity()) {
      scratch.identity_ += t.coeff;
      continue;
    }
    std::int32_t node = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const int slot = trie_slot(t.word.at(q));
      if (scratch.nodes_[node].child[slot] < 0) {
        scratch.nodes_[node].child[slot] = static_cast<std::int32_t>(scratch.nodes_.size());
        scratch.nodes_.emplace_back();
      }
      node = scratch.nodes_[node].child[slot];
    }
    scratch.nodes_[node].coeff += t.coeff;
  }

  Hamiltonian h;
  h.n_ = n;
  h.identity_ = scratch.identity_;
  h.nodes_.emplace_back();

  PauliWord word(n);
  auto visit = [&](auto&& self, std::int32_t node, std::size_t depth) -> void {
    if (depth == n) {
      const double c = scratch.nodes_[node].coeff;
      if (c != 0.0) h.terms_.push_back({word, c});
      return;
    }
    for (int s = 0; s < 4; ++s) {
      const auto child = scratch.nodes_[node].child[s];
      if (child < 0) continue;
      word.set(depth, kSlotLetter[s]);
      self(self, child, depth + 1);
    }
    word.set(depth, Letter::I);
  };
  visit(visit, 0, 0);

  for (const auto& t : h.terms_) {
    std::int32_t node = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const int slot = trie_slot(t.word.at(q));
      if (h.nodes_[node].child[slot] < 0) {
        h.nodes_[node].child[slot] = static_cast<std::int32_t>(h.nodes_.size());
        h.nodes_.emplace_back();
      }
      node = h.nodes_[node].child[slot];
    }
    h.nodes_[node].coeff = t.coeff;
    h.one_norm_ += std::abs(t.coeff);
  }
  return h;
}

Hamiltonian Hamiltonian::from_json_text(std::string_view text, std::size_t term_cap) {
  const json doc = parse_document(text, "Hamiltonian file");
  const std::size_t n = parse_n(doc, "Hamiltonian file");
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw ValidationError("Hamiltonian file: missing 'terms' array");
  std::vector<HamiltonianTerm> terms;
  for (std::size_t k = 0; k < doc["terms"].size(); ++k) {
    const json& t = doc["terms"][k];
    if (!t.is_object() || !t.contains("pauli") || !t["pauli"].is_string() || !t.contains("coeff") || !t["coeff"].is_number()) {
      throw ValidationError("Hamiltonian file: term " + std::to_string(k + 1) + " needs 'pauli' (string) and 'coeff' (number)");
    }
    try {
      terms.push_back({PauliWord::parse(t["pauli"].get<std::string>()), t["coeff"].get<double>()});
    } catch (const ValidationError& e) {
      throw ValidationError("Hamiltonian file: term " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  return build(n, terms, term_cap);
}

double Hamiltonian::coeff(const PauliWord& w) const {
  if (w.size() != n_) throw DimensionError("coeff: word size does not match Hamiltonian");
  if (w.is_identity()) return identity_;
  std::int32_t node = 0;
  for (std::size_t q = 0; q < n_; ++q) {
    node = nodes_[node].child[trie_slot(w.at(q))];
    if (node < 0) return 0.0;
  }
  return nodes_[node].coeff;
}

SparseDensity SparseDensity::ground(std::size_t n) {
  SparseDensity rho;
  rho.n_ = n;
  std::vector<std::uint64_t> zero((n + 63) / 64, 0);
  rho.entries_.push_back({zero, zero, {1.0, 0.0}});
  return rho;
}

SparseDensity SparseDensity::from_entries(
    std::size_t n, const std::vector<std::tuple<std::string, std::string, std::complex<double>>>& entries,
    std::size_t entry_cap) {
  if (entries.size() > entry_cap) {
    throw ResourceError("state has " + std::to_string(entries.size()) + " entries, cap is " + std::to_string(entry_cap));
  }
  std::map<std::pair<std::string, std::string>, std::complex<double>> raw;
  for (const auto& [ket, bra, v] : entries) {
    parse_bits(ket, n, "ket");
    parse_bits(bra, n, "bra");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ValidationError("state entry is not finite");
    raw[{ket, bra}] += v;
  }

  SparseDensity rho;
  rho.n_ = n;
  std::map<std::pair<std::string, std::string>, std::complex<double>> herm;
  for (const auto& [key, v] : raw) {
    herm[key] += 0.5 * v;
    herm[{key.second, key.first}] += 0.5 * std::conj(v);
  }
  for (const auto& [key, v] : herm) {
    auto it = raw.find(key);
    const std::complex<double> orig = it == raw.end() ? std::complex<double>{0, 0} : it->second;
    rho.adjustment_ = std::max(rho.adjustment_, std::abs(orig - v));
    if (v == std::complex<double>{0, 0}) continue;
    rho.entries_.push_back({parse_bits(key.first, n, "ket"), parse_bits(key.second, n, "bra"), v});
  }
  if (rho.entries_.size() > entry_cap) {
    throw ResourceError("symmetrized state has " + std::to_string(rho.entries_.size()) + " entries, cap is " +
                        std::to_string(entry_cap));
  }
  const auto tr = rho.trace();
  if (std::abs(tr - std::complex<double>{1.0, 0.0}) > 1e-9) {
    throw ValidationError("state trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  return rho;
}

SparseDensity SparseDensity::from_json_text(std::string_view text, std::size_t entry_cap) {
  const json doc = parse_document(text, "state file");
  const std::size_t n = parse_n(doc, "state file");
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw ValidationError("state file: missing 'entries' array");
  std::vector<std::tuple<std::string, std::string, std::complex<double>>> entries;
  for (std::size_t k = 0; k < doc["entries"].size(); ++k) {
    const json& e = doc["entries"][k];
    if (!e.is_object() || !e.contains("ket") || !e["ket"].is_string() || !e.contains("bra") || !e["bra"].is_string() ||
        !e.contains("re") || !e["re"].is_number() || (e.contains("im") && !e["im"].is_number())) {
      throw ValidationError("state file: entry " + std::to_string(k + 1) + " needs 'ket', 'bra', 're' and optional 'im'");
    }
    const double im = e.contains("im") ? e["im"].get<double>() : 0.0;
    entries.emplace_back(e["ket"].get<std::string>(), e["bra"].get<std::string>(), std::complex<double>{e["re"].get<double>(), im});
  }
  return from_entries(n, entries, entry_cap);
}

std::complex<double> SparseDensity::trace() const {
  std::complex<double> t{0, 0};
  for (const auto& e : entries_) {
    if (e.ket == e.bra) t += e.value;
  }
  return t;
}

double overlap(const SparseDensity& rho, const PauliWord& w) {
  if (w.size() != rho.num_qubits()) throw DimensionError("overlap: word size does not match state");
  return overlap_bits(rho, w.x_bits(), w.z_bits());
}

double overlap_bits(const SparseDensity& rho, std::span<const std::uint64_t> xs, std::span<const std::uint64_t> zs) {
  int y_count = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) y_count += std::popcount(xs[k] & zs[k]);
  const std::complex<double> y_phase = Phase::from_exponent(y_count).to_complex();

  // <b| X^x Z^z |a> = (-1)^{z.a} when b = a ^ x; Y contributes an extra i.
  std::complex<double> sum{0, 0};
  for (const auto& e : rho.entries()) {
    bool hit = true;
    int parity = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if ((e.ket[k] ^ e.bra[k]) != xs[k]) {
        hit = false;
        break;
      }
      parity ^= std::popcount(zs[k] & e.ket[k]) & 1;
    }
    if (!hit) continue;
    sum += parity ? -e.value : e.value;
  }
  sum *= y_phase;
  if (std::abs(sum.imag()) > 1e-12) {
    throw ValidationError("overlap has imaginary residue " + std::to_string(sum.imag()) + "; state is not Hermitian");
  }
  return sum.real();
}

std::string to_string(NormKind kind) {
  return kind == NormKind::ExactDense ? "exact-dense" : "coefficient-1-norm";
}

NormBound norm_bound(const Hamiltonian& h, std::size_t exact_threshold) {
  const std::size_t n = h.num_qubits();
  if (n == 0 || n > exact_threshold || h.term_count() == 0) {
    return {h.one_norm(), h.term_count() == 0 ? NormKind::ExactDense : NormKind::CoefficientOneNorm};
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms()) {
    std::size_t xmask = 0, zmask = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const auto v = static_cast<unsigned>(t.word.at(q));
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      if (v & 1u) xmask |= bit;
      if (v & 2u) zmask |= bit;
    }
    const std::complex<double> yph = Phase::from_exponent(std::popcount(xmask & zmask)).to_complex();
    for (std::size_t a = 0; a < dim; ++a) {
      const double s = (std::popcount(zmask & a) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(a ^ xmask), static_cast<Eigen::Index>(a)) += t.coeff * s * yph;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff())), NormKind::ExactDense};
}

}  // namespace paulipath

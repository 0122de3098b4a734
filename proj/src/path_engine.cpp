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

#include "paulipath/path_engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "paulipath/errors.hpp"

namespace paulipath {

namespace {

constexpr double kZeroOverlap = 1e-14;
constexpr std::uint64_t kFlushEvery = 1024;

struct RotOp {
  std::vector<std::uint64_t> gen;  // x limbs then z limbs
  std::uint32_t rotation;
};

struct CliffOp {
  std::size_t q0 = 0, q1 = 0;
  bool two = false;
  std::array<std::int8_t, 16> sign{};
  std::array<std::uint8_t, 16> code{};
};

struct LayerOps {
  std::vector<RotOp> rots;
  std::vector<CliffOp> cliffs;
};

struct Branch {
  std::uint32_t op;
  int delta;
  std::int8_t sign;
};

inline unsigned read_letter(const std::uint64_t* w, std::size_t limbs, std::size_t q) {
  const unsigned x = static_cast<unsigned>((w[q >> 6] >> (q & 63)) & 1u);
  const unsigned z = static_cast<unsigned>((w[limbs + (q >> 6)] >> (q & 63)) & 1u);
  return x | (z << 1);
}

inline void write_letter(std::uint64_t* w, std::size_t limbs, std::size_t q, unsigned v) {
  const std::uint64_t bit = std::uint64_t{1} << (q & 63);
  std::uint64_t& x = w[q >> 6];
  std::uint64_t& z = w[limbs + (q >> 6)];
  x = (v & 1u) ? (x | bit) : (x & ~bit);
  z = (v & 2u) ? (z | bit) : (z & ~bit);
}

inline std::size_t word_weight(const std::uint64_t* w, std::size_t limbs) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < limbs; ++k) r += static_cast<std::size_t>(std::popcount(w[k] | w[limbs + k]));
  return r;
}

// Exponent of i in a*b, same letterwise rule as product_phase_exponent.
inline int phase_exponent(const std::uint64_t* a, const std::uint64_t* b, std::size_t limbs) {
  int plus = 0, minus = 0;
  for (std::size_t k = 0; k < limbs; ++k) {
    const std::uint64_t ax = a[k], az = a[limbs + k], bx = b[k], bz = b[limbs + k];
    const std::uint64_t xa = ax & ~az, ya = ax & az, za = ~ax & az;
    const std::uint64_t xb = bx & ~bz, yb = bx & bz, zb = ~bx & bz;
    plus += std::popcount((xa & yb) | (ya & zb) | (za & xb));
    minus += std::popcount((ya & xb) | (za & yb) | (xa & zb));
  }
  return ((plus - minus) % 4 + 4) % 4;
}

inline bool anticommutes(const std::uint64_t* a, const std::uint64_t* b, std::size_t limbs) {
  int parity = 0;
  for (std::size_t k = 0; k < limbs; ++k) {
    parity ^= std::popcount((a[k] & b[limbs + k]) ^ (a[limbs + k] & b[k])) & 1;
  }
  return parity != 0;
}

// Sign phi of the sine branch: phi * (gen ^ succ) = i * gen * succ.
inline std::int8_t sine_sign(const std::uint64_t* gen, const std::uint64_t* succ, std::size_t limbs) {
  const int e = (phase_exponent(gen, succ, limbs) + 1) & 3;
  if (e & 1) throw std::logic_error("sine branch of a commuting pair");
  return e == 0 ? 1 : -1;
}

inline int sine_delta(const std::uint64_t* gen, const std::uint64_t* succ, std::size_t limbs) {
  int d = 0;
  for (std::size_t k = 0; k < limbs; ++k) {
    const std::uint64_t sx = succ[k], sz = succ[limbs + k];
    const std::uint64_t gx = gen[k], gz = gen[limbs + k];
    d += std::popcount((sx ^ gx) | (sz ^ gz)) - std::popcount(sx | sz);
  }
  return d;
}

std::vector<std::uint64_t> packed(const PauliWord& w) {
  std::vector<std::uint64_t> v(w.x_bits().begin(), w.x_bits().end());
  v.insert(v.end(), w.z_bits().begin(), w.z_bits().end());
  return v;
}

PauliWord unpack(std::size_t n, const std::uint64_t* w, std::size_t limbs) {
  return PauliWord::from_bits(n, {w, limbs}, {w + limbs, limbs});
}

CliffOp make_cliff(const CliffordGate& g, std::size_t n) {
  CliffOp op;
  op.q0 = g.qubit;
  op.two = g.kind == CliffordKind::CNOT;
  op.q1 = op.two ? g.target : g.qubit;
  const unsigned codes = op.two ? 16 : 4;
  for (unsigned c = 0; c < codes; ++c) {
    PauliWord w(n);
    w.set(op.q0, static_cast<Letter>(c & 3u));
    if (op.two) w.set(op.q1, static_cast<Letter>(c >> 2));
    const PhasedPauli r = clifford_conjugate(g, {Phase::one(), w}, Direction::Backward);
    if (!r.phase.is_real()) throw std::logic_error("Clifford conjugation produced an imaginary phase");
    op.sign[c] = static_cast<std::int8_t>(r.phase.sign());
    unsigned out = static_cast<unsigned>(r.word.at(op.q0));
    if (op.two) out |= static_cast<unsigned>(r.word.at(op.q1)) << 2;
    op.code[c] = static_cast<std::uint8_t>(out);
  }
  return op;
}

std::vector<LayerOps> compile_layers(const Circuit& circuit) {
  const std::size_t n = circuit.num_qubits();
  std::vector<LayerOps> out(circuit.depth());
  std::size_t g = 0;
  for (std::size_t l = 0; l < circuit.depth(); ++l) {
    for (const auto& gate : circuit.layers()[l].gates) {
      if (const auto* r = std::get_if<RotationGate>(&gate)) {
        out[l].rots.push_back({packed(r->generator), static_cast<std::uint32_t>(g++)});
      } else {
        out[l].cliffs.push_back(make_cliff(std::get<CliffordGate>(gate), n));
      }
    }
  }
  return out;
}

// One backward step through a layer. pred must already hold a copy of succ.
// Calls emit(weight, factor) for every admissible predecessor, leaving pred and
// atoms set for the duration of the call.
struct LayerExpander {
  std::size_t limbs;
  const LayerOps* ops;
  bool evaluate;  // false: factors stay 1
  const double* cos_table;
  const double* sin_table;
  std::vector<Branch>* branches;
  std::vector<int>* suffix;
  std::vector<FactorAtom>* atoms;
  EnumerationStats* stats;

  template <typename Emit>
  void expand(const std::uint64_t* succ, std::uint64_t* pred, long limit, double factor, Emit&& emit) {
    const std::size_t mark = atoms->size();
    for (const auto& c : ops->cliffs) {
      unsigned code = read_letter(succ, limbs, c.q0);
      if (c.two) code |= read_letter(succ, limbs, c.q1) << 2;
      write_letter(pred, limbs, c.q0, c.code[code] & 3u);
      if (c.two) write_letter(pred, limbs, c.q1, c.code[code] >> 2);
      if (c.sign[code] < 0) {
        atoms->push_back({AtomKind::Unit, -1, 0});
        if (evaluate) factor = -factor;
      }
    }
    branches->clear();
    for (std::uint32_t k = 0; k < ops->rots.size(); ++k) {
      const std::uint64_t* gen = ops->rots[k].gen.data();
      if (!anticommutes(gen, succ, limbs)) continue;
      branches->push_back({k, sine_delta(gen, succ, limbs), sine_sign(gen, succ, limbs)});
    }
    suffix->assign(branches->size() + 1, 0);
    for (std::size_t k = branches->size(); k-- > 0;) {
      (*suffix)[k] = (*suffix)[k + 1] + std::min(0, (*branches)[k].delta);
    }
    combine(0, static_cast<long>(word_weight(pred, limbs)), limit, factor, pred, emit);
    atoms->resize(mark);
  }

  template <typename Emit>
  void combine(std::size_t k, long w, long limit, double factor, std::uint64_t* pred, Emit& emit) {
    if (k == branches->size()) {
      if (w == 0) {
        ++stats->pruned_zero_weight;
        return;
      }
      if (w > limit) {
        ++stats->pruned_budget;
        return;
      }
      emit(static_cast<std::size_t>(w), factor);
      return;
    }
    if (w + (*suffix)[k] > limit) {
      ++stats->pruned_budget;
      return;
    }
    // Copy: emit may recurse into a deeper layer that reuses the vectors.
    const Branch b = (*branches)[k];
    const RotOp& op = ops->rots[b.op];
    const double c = evaluate ? cos_table[op.rotation] : 1.0;
    const double s = evaluate ? sin_table[op.rotation] : 1.0;

    atoms->push_back({AtomKind::Cos, 1, op.rotation});
    combine(k + 1, w, limit, evaluate ? factor * c : factor, pred, emit);
    atoms->pop_back();

    for (std::size_t i = 0; i < 2 * limbs; ++i) pred[i] ^= op.gen[i];
    atoms->push_back({AtomKind::Sin, b.sign, op.rotation});
    combine(k + 1, w + b.delta, limit, evaluate ? factor * b.sign * s : factor, pred, emit);
    atoms->pop_back();
    for (std::size_t i = 0; i < 2 * limbs; ++i) pred[i] ^= op.gen[i];
  }
};

}  // namespace

double FactorAtom::evaluate(std::span<const double> angles) const {
  switch (kind) {
    case AtomKind::Unit: return sign;
    case AtomKind::Cos: return sign * std::cos(angles[rotation]);
    case AtomKind::Sin: return sign * std::sin(angles[rotation]);
  }
  return 0.0;
}

std::string FactorAtom::describe(const Circuit& circuit) const {
  const char* s = sign < 0 ? "-" : "+";
  switch (kind) {
    case AtomKind::Unit: return sign < 0 ? "-1" : "+1";
    case AtomKind::Cos: return std::string(s) + "cos(" + circuit.parameter_label(rotation) + ")";
    case AtomKind::Sin: return std::string(s) + "sin(" + circuit.parameter_label(rotation) + ")";
  }
  return "?";
}

std::vector<Predecessor> rotation_predecessors(const PauliWord& gen, const PauliWord& succ, std::uint32_t rotation) {
  if (gen.size() != succ.size()) throw DimensionError("rotation_predecessors: generator and successor sizes differ");
  if (gen.is_identity()) throw ValidationError("rotation generator is the identity");
  if (commutes(gen, succ)) return {{succ, {AtomKind::Unit, 1, rotation}}};
  const PhasedPauli p = multiply(gen, succ);
  const Phase phi = Phase::i() * p.phase;
  return {{succ, {AtomKind::Cos, 1, rotation}}, {p.word, {AtomKind::Sin, static_cast<std::int8_t>(phi.sign()), rotation}}};
}

std::vector<LayerPredecessor> layer_predecessors(const Circuit& circuit, std::size_t layer, const PauliWord& succ,
                                                 const WeightBudget& budget) {
  if (layer >= circuit.depth()) throw ValidationError("layer index out of range");
  if (succ.size() != circuit.num_qubits()) throw DimensionError("successor size does not match circuit");
  const std::vector<LayerOps> ops = compile_layers(circuit);
  const std::size_t limbs = succ.x_bits().size();
  std::vector<std::uint64_t> s = packed(succ), pred = s;
  std::vector<Branch> branches;
  std::vector<int> suffix;
  std::vector<FactorAtom> atoms;
  EnumerationStats stats;
  LayerExpander ex{limbs, &ops[layer], false, nullptr, nullptr, &branches, &suffix, &atoms, &stats};
  const long limit = static_cast<long>(budget.max_weight) - static_cast<long>(budget.spent) -
                     static_cast<long>(budget.layers_remaining);
  std::vector<LayerPredecessor> out;
  ex.expand(s.data(), pred.data(), limit, 1.0, [&](std::size_t, double) {
    out.push_back({unpack(succ.size(), pred.data(), limbs), atoms});
  });
  return out;
}

EnumerationStats& EnumerationStats::operator+=(const EnumerationStats& o) {
  paths += o.paths;
  nodes += o.nodes;
  pruned_budget += o.pruned_budget;
  pruned_zero_weight += o.pruned_zero_weight;
  pruned_zero_overlap += o.pruned_zero_overlap;
  return *this;
}

PauliWord PathView::word(std::size_t i) const {
  if (i > depth_) throw std::out_of_range("path interface index");
  return unpack(n_, words_ + i * 2 * limbs_, limbs_);
}

PauliPath PathView::materialize() const {
  PauliPath p;
  for (std::size_t i = 0; i <= depth_; ++i) p.words.push_back(word(i));
  p.atoms.assign(atoms_.begin(), atoms_.end());
  p.total_weight = weight_;
  return p;
}

namespace detail {

struct PathViewAccess {
  static PathView make(std::size_t n, std::size_t limbs, std::size_t depth, const std::uint64_t* words,
                       std::span<const FactorAtom> atoms, std::size_t weight, double h_coeff, double overlap,
                       double factor) {
    PathView v;
    v.n_ = n;
    v.limbs_ = limbs;
    v.depth_ = depth;
    v.words_ = words;
    v.atoms_ = atoms;
    v.weight_ = weight;
    v.h_coeff_ = h_coeff;
    v.overlap_ = overlap;
    v.factor_ = factor;
    return v;
  }
};

}  // namespace detail

struct Enumerator::Impl {
  std::size_t n = 0, limbs = 0, depth = 0;
  std::vector<LayerOps> layers;
  std::vector<std::vector<std::uint64_t>> roots;
  bool evaluate = false;
  std::vector<double> cos_table, sin_table;
  mutable std::atomic<std::uint64_t> paths_total{0};
  mutable std::atomic<std::uint64_t> nodes_total{0};
  mutable std::atomic<bool> aborted{false};
};

namespace {

// Per-call search state; everything mutable lives here.
struct Search {
  std::size_t n, limbs, depth, max_weight;
  const std::vector<LayerOps>& layers;
  const SparseDensity& rho;
  bool evaluate;
  const double* cos_table;
  const double* sin_table;
  const EnumerationLimits& limits;
  std::atomic<std::uint64_t>& paths_total;
  std::atomic<std::uint64_t>& nodes_total;
  std::atomic<bool>& aborted;
  EnumerationStats& stats;

  std::vector<std::uint64_t> words;  // (depth + 1) interfaces
  std::vector<FactorAtom> atoms;
  std::vector<std::vector<Branch>> branches;
  std::vector<std::vector<int>> suffix;
  std::uint64_t pending_paths = 0, pending_nodes = 0;
  double h_coeff = 0;
  const Enumerator::Visitor* visit = nullptr;

  Search(std::size_t n_, std::size_t limbs_, std::size_t depth_, std::size_t m, const std::vector<LayerOps>& ly,
         const SparseDensity& r, bool ev, const double* c, const double* s, const EnumerationLimits& lim,
         std::atomic<std::uint64_t>& pt, std::atomic<std::uint64_t>& nt, std::atomic<bool>& ab, EnumerationStats& st)
      : n(n_), limbs(limbs_), depth(depth_), max_weight(m), layers(ly), rho(r), evaluate(ev), cos_table(c), sin_table(s),
        limits(lim), paths_total(pt), nodes_total(nt), aborted(ab), stats(st),
        words((depth_ + 1) * 2 * limbs_, 0), branches(depth_ + 1), suffix(depth_ + 1) {
    atoms.reserve(64);
  }

  std::uint64_t* at(std::size_t i) { return words.data() + i * 2 * limbs; }

  void flush() {
    const std::uint64_t p = paths_total.fetch_add(pending_paths) + pending_paths;
    const std::uint64_t q = nodes_total.fetch_add(pending_nodes) + pending_nodes;
    pending_paths = pending_nodes = 0;
    if (aborted.load(std::memory_order_relaxed)) throw ResourceError("enumeration aborted by another worker");
    if (p > limits.max_paths) {
      aborted = true;
      throw ResourceError("path count exceeded the limit of " + std::to_string(limits.max_paths));
    }
    if (q > limits.max_nodes) {
      aborted = true;
      throw ResourceError("node count exceeded the limit of " + std::to_string(limits.max_nodes));
    }
  }

  void count_node() {
    ++stats.nodes;
    if (++pending_nodes >= kFlushEvery) flush();
  }

  LayerExpander expander(std::size_t layer) {
    return {limbs, &layers[layer], evaluate, cos_table, sin_table, &branches[layer], &suffix[layer], &atoms, &stats};
  }

  // Word at interface l is in place; choose the one at l - 1.
  void descend(std::size_t l, std::size_t spent, double factor) {
    std::uint64_t* succ = at(l);
    std::uint64_t* pred = at(l - 1);
    std::copy(succ, succ + 2 * limbs, pred);
    const long limit = static_cast<long>(max_weight) - static_cast<long>(spent) - static_cast<long>(l - 1);
    expander(l - 1).expand(succ, pred, limit, factor, [&](std::size_t w, double f) {
      count_node();
      if (l - 1 == 0) {
        leaf(spent + w, f);
      } else {
        descend(l - 1, spent + w, f);
      }
    });
  }

  void leaf(std::size_t total_weight, double factor) {
    const std::uint64_t* s0 = at(0);
    const double ov = overlap_bits(rho, {s0, limbs}, {s0 + limbs, limbs});
    if (std::abs(ov) <= kZeroOverlap) {
      ++stats.pruned_zero_overlap;
      return;
    }
    ++stats.paths;
    if (++pending_paths >= kFlushEvery) flush();
    (*visit)(detail::PathViewAccess::make(n, limbs, depth, words.data(), atoms, total_weight, h_coeff, ov, factor));
  }
};

}  // namespace

Enumerator::Enumerator(const Circuit& circuit, const Hamiltonian& h, const SparseDensity& rho, std::size_t max_weight,
                       std::vector<double> angles, EnumerationLimits limits)
    : circuit_(circuit), h_(h), rho_(rho), max_weight_(max_weight), angles_(std::move(angles)), limits_(limits),
      impl_(std::make_unique<Impl>()) {
  const std::size_t n = circuit.num_qubits();
  if (h.num_qubits() != n && h.term_count() > 0) throw DimensionError("Hamiltonian qubit count does not match circuit");
  if (rho.num_qubits() != n) throw DimensionError("state qubit count does not match circuit");
  if (!angles_.empty() && angles_.size() != circuit.rotation_count()) {
    throw ValidationError("expected " + std::to_string(circuit.rotation_count()) + " angles, got " +
                          std::to_string(angles_.size()));
  }
  impl_->n = n;
  impl_->limbs = (n + 63) / 64;
  impl_->depth = circuit.depth();
  impl_->layers = compile_layers(circuit);
  for (const auto& t : h.terms()) impl_->roots.push_back(packed(t.word));
  impl_->evaluate = !angles_.empty() || circuit.rotation_count() == 0;
  if (!angles_.empty()) {
    for (double a : angles_) {
      impl_->cos_table.push_back(std::cos(a));
      impl_->sin_table.push_back(std::sin(a));
    }
  }
}

Enumerator::~Enumerator() = default;

std::vector<EnumerationTask> Enumerator::tasks(EnumerationStats& stats) const {
  impl_->paths_total = 0;
  impl_->nodes_total = 0;
  impl_->aborted = false;
  std::vector<EnumerationTask> out;
  const std::size_t L = impl_->depth, limbs = impl_->limbs;
  const double* c = impl_->cos_table.empty() ? nullptr : impl_->cos_table.data();
  const double* s = impl_->sin_table.empty() ? nullptr : impl_->sin_table.data();
  Search search(impl_->n, limbs, L, max_weight_, impl_->layers, rho_, impl_->evaluate, c, s, limits_, impl_->paths_total,
                impl_->nodes_total, impl_->aborted, stats);

  for (std::size_t t = 0; t < impl_->roots.size(); ++t) {
    const auto& root = impl_->roots[t];
    const std::size_t wr = word_weight(root.data(), limbs);
    if (wr + L > max_weight_) {
      ++stats.pruned_budget;
      continue;
    }
    search.count_node();
    if (L == 0) {
      out.push_back({t, {}, {}, wr, 1.0});
      continue;
    }
    std::copy(root.begin(), root.end(), search.at(L));
    std::uint64_t* pred = search.at(L - 1);
    std::copy(root.begin(), root.end(), pred);
    const long limit = static_cast<long>(max_weight_) - static_cast<long>(wr) - static_cast<long>(L - 1);
    search.expander(L - 1).expand(search.at(L), pred, limit, 1.0, [&](std::size_t w, double f) {
      search.count_node();
      out.push_back({t, std::vector<std::uint64_t>(pred, pred + 2 * limbs), search.atoms, wr + w, f});
    });
  }
  search.flush();
  return out;
}

void Enumerator::run_task(const EnumerationTask& task, const Visitor& visit, EnumerationStats& stats) const {
  const std::size_t L = impl_->depth, limbs = impl_->limbs;
  const double* c = impl_->cos_table.empty() ? nullptr : impl_->cos_table.data();
  const double* s = impl_->sin_table.empty() ? nullptr : impl_->sin_table.data();
  Search search(impl_->n, limbs, L, max_weight_, impl_->layers, rho_, impl_->evaluate, c, s, limits_, impl_->paths_total,
                impl_->nodes_total, impl_->aborted, stats);
  search.visit = &visit;
  search.h_coeff = h_.terms()[task.term].coeff;
  const auto& root = impl_->roots[task.term];
  std::copy(root.begin(), root.end(), search.at(L));
  if (L == 0) {
    search.leaf(task.weight, task.factor);
  } else {
    std::copy(task.word.begin(), task.word.end(), search.at(L - 1));
    search.atoms = task.atoms;
    if (L == 1) {
      search.leaf(task.weight, task.factor);
    } else {
      search.descend(L - 1, task.weight, task.factor);
    }
  }
  search.flush();
}

EnumerationStats Enumerator::run(const Visitor& visit) const {
  EnumerationStats stats;
  const auto ts = tasks(stats);
  for (const auto& t : ts) run_task(t, visit, stats);
  return stats;
}

std::vector<PauliPath> Enumerator::collect() const {
  std::vector<PauliPath> out;
  run([&](const PathView& v) { out.push_back(v.materialize()); });
  return out;
}

}  // namespace paulipath

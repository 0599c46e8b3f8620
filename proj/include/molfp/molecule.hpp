// SPDX-FileCopyrightText: Copyright (c) 2026 The molfp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "molfp/element.hpp"
#include "molfp/error.hpp"
#include "molfp/hash.hpp"
#include "molfp/rings.hpp"

namespace molfp {

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

/// Bond order in half-bond units: aromatic counts 1.5.
constexpr int half_order(BondOrder order) noexcept {
  return order == BondOrder::Aromatic ? 3 : 2 * static_cast<int>(order);
}

struct AtomDraft {
  AtomicNumber element = 6;
  int formal_charge = 0;
  std::optional<std::uint32_t> isotope;
  std::optional<std::uint32_t> explicit_h;  // set for bracket atoms
  bool aromatic = false;
};

struct BondDraft {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  BondOrder order = BondOrder::Single;
};

/// Unsanitized molecular graph as produced by a parser or built by hand.
struct MoleculeDraft {
  std::vector<AtomDraft> atoms;
  std::vector<BondDraft> bonds;
  std::optional<std::string> source_text;
  bool stereo_ignored = false;

  std::uint32_t add_atom(const AtomDraft& atom) {
    atoms.push_back(atom);
    return static_cast<std::uint32_t>(atoms.size() - 1);
  }

  std::optional<std::size_t> find_bond(std::uint32_t a, std::uint32_t b) const {
    for (std::size_t i = 0; i < bonds.size(); ++i) {
      const auto& bond = bonds[i];
      if ((bond.begin == a && bond.end == b) || (bond.begin == b && bond.end == a)) return i;
    }
    return std::nullopt;
  }

  void add_bond(std::uint32_t a, std::uint32_t b, BondOrder order) {
    bonds.push_back({a, b, order});
  }

  /// Throws Error(Shape) if a bond references a missing atom, is a self-loop,
  /// or duplicates another bond.
  void validate() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
    seen.reserve(bonds.size());
    for (const auto& bond : bonds) {
      if (bond.begin >= atoms.size() || bond.end >= atoms.size())
        throw Error(ErrorKind::Shape, "bond references a missing atom");
      if (bond.begin == bond.end) throw Error(ErrorKind::Shape, "self-loop bond");
      seen.emplace_back(std::min(bond.begin, bond.end), std::max(bond.begin, bond.end));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw Error(ErrorKind::Shape, "duplicate bond");
    for (const auto& atom : atoms) {
      if (atom.element == 0 || atom.element > kMaxAtomicNumber)
        throw Error(ErrorKind::Shape, "atomic number out of range");
    }
  }
};

struct Atom {
  AtomicNumber element = 6;
  int formal_charge = 0;
  std::optional<std::uint32_t> isotope;
  std::uint32_t implicit_h = 0;  // hydrogens not present as graph atoms
  bool aromatic = false;
  std::uint32_t degree = 0;        // graph neighbors
  std::uint32_t heavy_degree = 0;  // non-hydrogen graph neighbors
};

struct Bond {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  BondOrder order = BondOrder::Single;

  std::uint32_t other(std::uint32_t atom) const noexcept { return atom == begin ? end : begin; }
};

struct Neighbor {
  std::uint32_t atom;
  std::uint32_t bond;

  friend bool operator<(const Neighbor& a, const Neighbor& b) { return a.atom < b.atom; }
};

class Molecule;
Molecule sanitize(const MoleculeDraft& draft);

/// Sanitized, immutable molecular graph. Only `sanitize` constructs one.
class Molecule {
 public:
  Molecule() = default;

  std::size_t num_atoms() const noexcept { return atoms_.size(); }
  std::size_t num_bonds() const noexcept { return bonds_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::span<const Bond> bonds() const noexcept { return bonds_; }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  const Bond& bond(std::size_t i) const { return bonds_[i]; }
  std::span<const Neighbor> neighbors(std::size_t i) const { return adjacency_[i]; }
  const RingInfo& ring_info() const noexcept { return rings_; }

  /// Implicit hydrogens plus hydrogen atoms present in the graph.
  std::uint32_t total_h(std::size_t i) const {
    return atoms_[i].implicit_h + (atoms_[i].degree - atoms_[i].heavy_degree);
  }

  bool is_hydrogen(std::size_t i) const { return atoms_[i].element == 1; }

  std::optional<std::uint32_t> bond_between(std::uint32_t a, std::uint32_t b) const {
    for (const auto& n : adjacency_[a]) {
      if (n.atom == b) return n.bond;
    }
    return std::nullopt;
  }

  /// Number of connected components (0 for the empty molecule).
  std::size_t num_components() const {
    std::vector<Edge> edges;
    edges.reserve(bonds_.size());
    for (const auto& b : bonds_) edges.emplace_back(b.begin, b.end);
    return detail::count_components(atoms_.size(), detail::Adjacency(atoms_.size(), edges));
  }

 private:
  friend Molecule sanitize(const MoleculeDraft& draft);

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
  RingInfo rings_;
};

namespace detail {

/// Hydrogens an organic-subset atom receives when written without brackets.
/// `other_half` is the half-unit sum of non-aromatic bonds; `n_aromatic` the
/// aromatic bond count. Aromatic heteroatoms receive none; anything that
/// needs one must carry it in brackets ("[nH]"). Returns nullopt when no
/// permitted valence accommodates the bonds.
inline std::optional<std::uint32_t> default_hydrogens(AtomicNumber element, int charge,
                                                      bool aromatic, int other_half,
                                                      int n_aromatic) {
  const auto valences = permitted_valences(element);
  if (valences.empty()) return 0u;
  const int shift = charge_valence_shift(element, charge);
  const int sum = (other_half + 3 * n_aromatic) / 2;  // half-sums round down
  const int kekule_min = other_half / 2 + n_aromatic;
  if (aromatic && element != 6 && element != 5) {
    if (kekule_min > valences.back() + shift) return std::nullopt;
    return 0u;
  }
  for (int v : valences) {
    if (v + shift >= sum) return static_cast<std::uint32_t>(v + shift - sum);
  }
  // Exocyclic double bonds on aromatic carbon ("O=c1cccc[nH]1").
  if (n_aromatic > 0 && kekule_min <= valences.back() + shift) return 0u;
  return std::nullopt;
}

}  // namespace detail

/// Resolves implicit hydrogens, perceives rings and checks valences.
///
/// Aromatic bonds that do not lie on a ring are demoted to single bonds.
/// For the valence check every aromatic bond counts at least one bond
/// (the smallest Kekulé assignment), so five-membered heteroaromatics such
/// as furan or "[nH]" pyrrole are accepted without kekulization.
inline Molecule sanitize(const MoleculeDraft& draft) {
  draft.validate();
  const std::size_t n = draft.atoms.size();

  std::vector<Edge> edges;
  edges.reserve(draft.bonds.size());
  for (const auto& b : draft.bonds) edges.emplace_back(b.begin, b.end);

  Molecule mol;
  mol.rings_ = perceive_rings(n, edges);

  for (std::size_t i = 0; i < n; ++i) {
    if (draft.atoms[i].aromatic && !mol.rings_.atom_in_ring[i]) {
      throw SanitizeError(ErrorKind::Aromaticity, i,
                          "aromatic atom " + std::to_string(i) + " (" +
                              std::string(element_symbol(draft.atoms[i].element)) +
                              ") is not in a ring");
    }
  }

  mol.bonds_.reserve(draft.bonds.size());
  for (std::size_t b = 0; b < draft.bonds.size(); ++b) {
    Bond bond{draft.bonds[b].begin, draft.bonds[b].end, draft.bonds[b].order};
    if (bond.order == BondOrder::Aromatic && !mol.rings_.bond_in_ring[b]) bond.order = BondOrder::Single;
    mol.bonds_.push_back(bond);
  }

  mol.adjacency_.assign(n, {});
  for (std::uint32_t b = 0; b < mol.bonds_.size(); ++b) {
    mol.adjacency_[mol.bonds_[b].begin].push_back({mol.bonds_[b].end, b});
    mol.adjacency_[mol.bonds_[b].end].push_back({mol.bonds_[b].begin, b});
  }
  for (auto& list : mol.adjacency_) std::sort(list.begin(), list.end());

  mol.atoms_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& src = draft.atoms[i];
    auto& atom = mol.atoms_[i];
    atom.element = src.element;
    atom.formal_charge = src.formal_charge;
    atom.isotope = src.isotope;
    atom.aromatic = src.aromatic;
    atom.degree = static_cast<std::uint32_t>(mol.adjacency_[i].size());
    atom.heavy_degree = static_cast<std::uint32_t>(std::count_if(
        mol.adjacency_[i].begin(), mol.adjacency_[i].end(),
        [&](const Neighbor& nb) { return draft.atoms[nb.atom].element != 1; }));

    int other_half = 0;
    int n_aromatic = 0;
    for (const auto& nb : mol.adjacency_[i]) {
      const auto order = mol.bonds_[nb.bond].order;
      if (order == BondOrder::Aromatic) {
        ++n_aromatic;
      } else {
        other_half += half_order(order);
      }
    }

    auto invalid = [&] {
      return SanitizeError(ErrorKind::Valence, i,
                           "valence violation on atom " + std::to_string(i) + " (" +
                               std::string(element_symbol(src.element)) + ")");
    };

    if (src.explicit_h) {
      atom.implicit_h = *src.explicit_h;
    } else {
      auto h = detail::default_hydrogens(src.element, src.formal_charge, src.aromatic,
                                        other_half, n_aromatic);
      if (!h) throw invalid();
      atom.implicit_h = *h;
    }

    const auto valences = permitted_valences(src.element);
    if (!valences.empty()) {
      const int shift = charge_valence_shift(src.element, src.formal_charge);
      const int kekule_min = other_half / 2 + n_aromatic + static_cast<int>(atom.implicit_h);
      const bool ok = std::any_of(valences.begin(), valences.end(),
                                  [&](int v) { return kekule_min <= v + shift; });
      if (!ok) throw invalid();
    }
  }
  return mol;
}

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// All-pairs unweighted shortest paths (bond counts), row-major n x n.
/// Pairs in different components hold `kUnreachable`.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Molecule& mol)
      : n_(mol.num_atoms()), data_(n_ * n_, kUnreachable) {
    std::vector<std::uint32_t> queue;
    queue.reserve(n_);
    for (std::uint32_t s = 0; s < n_; ++s) {
      auto* row = &data_[s * n_];
      row[s] = 0;
      queue.clear();
      queue.push_back(s);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        auto v = queue[head];
        for (const auto& nb : mol.neighbors(v)) {
          if (row[nb.atom] == kUnreachable) {
            row[nb.atom] = row[v] + 1;
            queue.push_back(nb.atom);
          }
        }
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> data_;
};

inline DistanceMatrix shortest_path_matrix(const Molecule& mol) { return DistanceMatrix(mol); }

/// Iteration-0 code for circular fingerprints: a hash of (atomic number,
/// heavy degree, total H, formal charge, isotope, ring membership,
/// aromaticity).
inline std::uint32_t initial_atom_invariant(const Molecule& mol, std::size_t i) {
  const auto& a = mol.atom(i);
  return hash_words(std::uint32_t{a.element}, a.heavy_degree, mol.total_h(i),
                    static_cast<std::int32_t>(a.formal_charge), a.isotope.value_or(0),
                    std::uint32_t{mol.ring_info().atom_in_ring[i]}, std::uint32_t{a.aromatic});
}

}  // namespace molfp

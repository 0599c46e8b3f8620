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
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "molfp/molecule.hpp"

namespace molfp {

struct CanonicalRanking {
  std::vector<std::uint32_t> symmetry_classes;  // stable partition before any tie-break
  std::vector<std::uint32_t> ranks;             // permutation of 0..n-1
};

namespace detail {

/// Dense ranks of `keys` (equal keys share a rank, ranks start at 0).
template <class Key>
std::vector<std::uint32_t> dense_ranks(const std::vector<Key>& keys) {
  std::vector<std::uint32_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return keys[a] < keys[b]; });
  std::vector<std::uint32_t> ranks(keys.size());
  std::uint32_t rank = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && keys[order[i - 1]] < keys[order[i]]) ++rank;
    ranks[order[i]] = rank;
  }
  return ranks;
}

inline std::size_t count_classes(const std::vector<std::uint32_t>& ranks) {
  if (ranks.empty()) return 0;
  return *std::max_element(ranks.begin(), ranks.end()) + 1u;
}

/// Refines ranks by neighborhoods until the number of classes is stable.
inline void refine(const Molecule& mol, std::vector<std::uint32_t>& ranks) {
  using Key = std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>;
  std::size_t classes = count_classes(ranks);
  std::vector<Key> keys(mol.num_atoms());
  while (true) {
    for (std::size_t i = 0; i < mol.num_atoms(); ++i) {
      keys[i].first = ranks[i];
      auto& env = keys[i].second;
      env.clear();
      for (const auto& nb : mol.neighbors(i)) {
        env.emplace_back(ranks[nb.atom], static_cast<std::uint32_t>(mol.bond(nb.bond).order));
      }
      std::sort(env.begin(), env.end());
    }
    ranks = dense_ranks(keys);
    const auto next = count_classes(ranks);
    if (next == classes) break;
    classes = next;
  }
}

}  // namespace detail

/// Canonical atom ranking by iterative neighborhood refinement.
///
/// Seeds are (element, degree, charge, total H, aromatic, isotope). When the
/// partition is stable but not discrete, the lowest tied class is split by
/// promoting its smallest-index atom and refinement is re-run.
inline CanonicalRanking canonical_ranks(const Molecule& mol) {
  const std::size_t n = mol.num_atoms();
  using Seed = std::tuple<std::uint32_t, std::uint32_t, int, std::uint32_t, bool, std::uint32_t>;
  std::vector<Seed> seeds(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = mol.atom(i);
    seeds[i] = {a.element, a.degree, a.formal_charge, mol.total_h(i), a.aromatic,
                a.isotope.value_or(0)};
  }
  CanonicalRanking result;
  auto ranks = detail::dense_ranks(seeds);
  detail::refine(mol, ranks);
  result.symmetry_classes = ranks;

  while (detail::count_classes(ranks) < n) {
    std::vector<std::uint32_t> class_size(n, 0);
    for (auto r : ranks) ++class_size[r];
    std::uint32_t tied = 0;
    while (class_size[tied] < 2) ++tied;
    std::size_t chosen = 0;
    while (ranks[chosen] != tied) ++chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if (ranks[i] > tied || (ranks[i] == tied && i != chosen)) ++ranks[i];
    }
    detail::refine(mol, ranks);
  }
  result.ranks = std::move(ranks);
  return result;
}

namespace detail {

inline std::string atom_symbol(const Molecule& mol, std::size_t i) {
  const auto& atom = mol.atom(i);
  std::string symbol(element_symbol(atom.element));
  if (atom.aromatic) symbol[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(symbol[0])));

  bool bare = in_organic_subset(atom.element) && atom.formal_charge == 0 && !atom.isotope;
  if (bare) {
    int other_half = 0;
    int n_aromatic = 0;
    for (const auto& nb : mol.neighbors(i)) {
      const auto order = mol.bond(nb.bond).order;
      if (order == BondOrder::Aromatic) {
        ++n_aromatic;
      } else {
        other_half += half_order(order);
      }
    }
    auto h = default_hydrogens(atom.element, 0, atom.aromatic, other_half, n_aromatic);
    bare = h && *h == atom.implicit_h;
  }
  if (bare) return symbol;

  std::string out = "[";
  if (atom.isotope) out += std::to_string(*atom.isotope);
  out += symbol;
  if (atom.implicit_h > 0) {
    out += 'H';
    if (atom.implicit_h > 1) out += std::to_string(atom.implicit_h);
  }
  if (atom.formal_charge != 0) {
    out += atom.formal_charge > 0 ? '+' : '-';
    const int magnitude = std::abs(atom.formal_charge);
    if (magnitude > 1) out += std::to_string(magnitude);
  }
  out += ']';
  return out;
}

inline std::string bond_symbol(const Molecule& mol, const Bond& bond) {
  const bool both_aromatic = mol.atom(bond.begin).aromatic && mol.atom(bond.end).aromatic;
  switch (bond.order) {
    case BondOrder::Single: return both_aromatic ? "-" : "";
    case BondOrder::Double: return "=";
    case BondOrder::Triple: return "#";
    case BondOrder::Aromatic: return both_aromatic ? "" : ":";
  }
  return "";
}

inline std::string ring_label(int digit) {
  return digit < 10 ? std::to_string(digit) : "%" + std::to_string(digit);
}

class SmilesWriter {
 public:
  SmilesWriter(const Molecule& mol, const std::vector<std::uint32_t>& ranks)
      : mol_(mol), ranks_(ranks), visited_(mol.num_atoms(), false),
        children_(mol.num_atoms()), ring_bonds_(mol.num_atoms()),
        is_ring_bond_(mol.num_bonds(), false), emitted_(mol.num_atoms(), false),
        ring_digit_(mol.num_bonds(), -1) {}

  std::string write() {
    std::vector<std::uint32_t> by_rank(mol_.num_atoms());
    std::iota(by_rank.begin(), by_rank.end(), 0u);
    std::sort(by_rank.begin(), by_rank.end(), [&](auto a, auto b) { return ranks_[a] < ranks_[b]; });

    std::string out;
    for (auto root : by_rank) {
      if (visited_[root]) continue;
      discover(root, kNoBond);
      if (!out.empty()) out += '.';
      emit(root, out);
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kNoBond = 0xffffffffu;

  std::vector<Neighbor> sorted_neighbors(std::uint32_t atom) const {
    auto nbrs = std::vector<Neighbor>(mol_.neighbors(atom).begin(), mol_.neighbors(atom).end());
    std::sort(nbrs.begin(), nbrs.end(),
              [&](const auto& a, const auto& b) { return ranks_[a.atom] < ranks_[b.atom]; });
    return nbrs;
  }

  // First pass: DFS tree and ring-closure bonds.
  void discover(std::uint32_t atom, std::uint32_t via_bond) {
    visited_[atom] = true;
    for (const auto& nb : sorted_neighbors(atom)) {
      if (nb.bond == via_bond) continue;
      if (!visited_[nb.atom]) {
        children_[atom].push_back(nb);
        discover(nb.atom, nb.bond);
      } else if (!is_ring_bond_[nb.bond]) {
        is_ring_bond_[nb.bond] = true;
        ring_bonds_[atom].push_back(nb);
        ring_bonds_[nb.atom].push_back({atom, nb.bond});
      }
    }
  }

  void emit(std::uint32_t atom, std::string& out) {
    emitted_[atom] = true;
    out += atom_symbol(mol_, atom);

    auto rings = ring_bonds_[atom];
    std::sort(rings.begin(), rings.end(),
              [&](const auto& a, const auto& b) { return ranks_[a.atom] < ranks_[b.atom]; });
    std::vector<int> released;
    for (const auto& nb : rings) {
      if (emitted_[nb.atom]) {
        const int digit = ring_digit_[nb.bond];
        out += bond_symbol(mol_, mol_.bond(nb.bond));
        out += ring_label(digit);
        released.push_back(digit);
      } else {
        int digit = 1;
        while (std::find(in_use_.begin(), in_use_.end(), digit) != in_use_.end()) ++digit;
        in_use_.push_back(digit);
        ring_digit_[nb.bond] = digit;
        out += ring_label(digit);
      }
    }
    for (int digit : released) in_use_.erase(std::find(in_use_.begin(), in_use_.end(), digit));

    const auto& kids = children_[atom];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool branch = k + 1 < kids.size();
      if (branch) out += '(';
      out += bond_symbol(mol_, mol_.bond(kids[k].bond));
      emit(kids[k].atom, out);
      if (branch) out += ')';
    }
  }

  const Molecule& mol_;
  const std::vector<std::uint32_t>& ranks_;
  std::vector<bool> visited_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<Neighbor>> ring_bonds_;
  std::vector<bool> is_ring_bond_;
  std::vector<bool> emitted_;
  std::vector<int> ring_digit_;
  std::vector<int> in_use_;
};

}  // namespace detail

/// Canonical SMILES: a depth-first walk from the lowest-ranked atom of each
/// component, neighbors in rank order. Aromatic systems stay lowercase.
inline std::string write_canonical_smiles(const Molecule& mol) {
  const auto ranking = canonical_ranks(mol);
  return detail::SmilesWriter(mol, ranking.ranks).write();
}

}  // namespace molfp

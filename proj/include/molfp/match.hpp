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
#include <set>
#include <vector>

#include "molfp/molecule.hpp"
#include "molfp/smarts.hpp"

namespace molfp {

/// mappings[k][q] is the target atom assigned to query atom q.
struct MatchSet {
  std::vector<std::vector<std::uint32_t>> mappings;
  std::vector<std::vector<std::uint32_t>> unique_atom_sets;  // sorted, first-seen order
};

namespace detail {

/// Backtracking subgraph matcher. Query atoms are visited most-constrained
/// first: the atom with the fewest candidates starts, and every following
/// atom is the candidate-poorest one adjacent to those already placed (a
/// new component starts only when no such atom remains).
class SubstructureMatcher {
 public:
  SubstructureMatcher(const SmartsPattern& pattern, const Molecule& mol)
      : pattern_(pattern), mol_(mol), candidates_(pattern.num_atoms()),
        query_adj_(pattern.num_atoms()) {
    for (std::uint32_t q = 0; q < pattern.num_atoms(); ++q) {
      for (std::uint32_t t = 0; t < mol.num_atoms(); ++t) {
        if (pattern.atom_matches(q, mol, t)) candidates_[q].push_back(t);
      }
    }
    for (std::uint32_t b = 0; b < pattern.num_bonds(); ++b) {
      const auto& qb = pattern.bond(b);
      query_adj_[qb.begin].push_back({qb.end, b});
      query_adj_[qb.end].push_back({qb.begin, b});
    }
    plan_order();
  }

  /// Calls `visit(mapping)` for each match in deterministic order; stops
  /// early when `visit` returns false.
  template <class Visit>
  void run(Visit&& visit) {
    if (pattern_.num_atoms() == 0 || pattern_.num_atoms() > mol_.num_atoms()) return;
    for (const auto& c : candidates_) {
      if (c.empty()) return;
    }
    mapping_.assign(pattern_.num_atoms(), kUnmapped);
    used_.assign(mol_.num_atoms(), false);
    stop_ = false;
    extend(0, visit);
  }

 private:
  static constexpr std::uint32_t kUnmapped = std::numeric_limits<std::uint32_t>::max();

  struct QueryNeighbor {
    std::uint32_t atom;
    std::uint32_t bond;
  };

  void plan_order() {
    const auto n = pattern_.num_atoms();
    std::vector<bool> placed(n, false);
    while (order_.size() < n) {
      std::uint32_t best = kUnmapped;
      bool best_connected = false;
      for (std::uint32_t q = 0; q < n; ++q) {
        if (placed[q]) continue;
        const bool connected = std::any_of(query_adj_[q].begin(), query_adj_[q].end(),
                                           [&](const auto& nb) { return placed[nb.atom]; });
        if (best == kUnmapped || (connected && !best_connected) ||
            (connected == best_connected && candidates_[q].size() < candidates_[best].size())) {
          best = q;
          best_connected = connected;
        }
      }
      placed[best] = true;
      order_.push_back(best);
      // The first already-placed neighbor anchors candidate generation.
      std::uint32_t anchor = kUnmapped, anchor_bond = kUnmapped;
      for (auto prior : order_) {
        for (const auto& nb : query_adj_[best]) {
          if (nb.atom == prior && anchor == kUnmapped) {
            anchor = prior;
            anchor_bond = nb.bond;
          }
        }
      }
      anchors_.push_back({anchor, anchor_bond});
    }
  }

  bool bonds_consistent(std::uint32_t q, std::uint32_t t) const {
    for (const auto& nb : query_adj_[q]) {
      const auto mapped = mapping_[nb.atom];
      if (mapped == kUnmapped) continue;
      const auto bond = mol_.bond_between(t, mapped);
      if (!bond || !pattern_.bond_matches(nb.bond, mol_, *bond)) return false;
    }
    return true;
  }

  template <class Visit>
  void extend(std::size_t depth, Visit& visit) {
    if (depth == order_.size()) {
      if (!visit(mapping_)) stop_ = true;
      return;
    }
    const auto q = order_[depth];
    auto try_target = [&](std::uint32_t t) {
      if (used_[t] || !bonds_consistent(q, t)) return;
      mapping_[q] = t;
      used_[t] = true;
      extend(depth + 1, visit);
      used_[t] = false;
      mapping_[q] = kUnmapped;
    };
    const auto [anchor, anchor_bond] = anchors_[depth];
    if (anchor == kUnmapped) {
      for (auto t : candidates_[q]) {
        try_target(t);
        if (stop_) return;
      }
    } else {
      for (const auto& nb : mol_.neighbors(mapping_[anchor])) {
        if (!std::binary_search(candidates_[q].begin(), candidates_[q].end(), nb.atom)) continue;
        try_target(nb.atom);
        if (stop_) return;
      }
    }
  }

  const SmartsPattern& pattern_;
  const Molecule& mol_;
  std::vector<std::vector<std::uint32_t>> candidates_;
  std::vector<std::vector<QueryNeighbor>> query_adj_;
  std::vector<std::uint32_t> order_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> anchors_;
  std::vector<std::uint32_t> mapping_;
  std::vector<bool> used_;
  bool stop_ = false;
};

}  // namespace detail

/// All injective query-to-target atom assignments satisfying every atom and
/// bond predicate.
inline MatchSet match(const SmartsPattern& pattern, const Molecule& mol) {
  MatchSet result;
  std::set<std::vector<std::uint32_t>> seen;
  detail::SubstructureMatcher(pattern, mol).run([&](const std::vector<std::uint32_t>& m) {
    result.mappings.push_back(m);
    auto atoms = m;
    std::sort(atoms.begin(), atoms.end());
    if (seen.insert(atoms).second) result.unique_atom_sets.push_back(std::move(atoms));
    return true;
  });
  return result;
}

inline bool has_match(const SmartsPattern& pattern, const Molecule& mol) {
  bool found = false;
  detail::SubstructureMatcher(pattern, mol).run([&](const auto&) {
    found = true;
    return false;
  });
  return found;
}

/// Matches counted by distinct target atom sets, so pattern automorphisms
/// do not inflate the count.
inline std::size_t count_unique(const SmartsPattern& pattern, const Molecule& mol) {
  std::set<std::vector<std::uint32_t>> seen;
  detail::SubstructureMatcher(pattern, mol).run([&](const std::vector<std::uint32_t>& m) {
    auto atoms = m;
    std::sort(atoms.begin(), atoms.end());
    seen.insert(std::move(atoms));
    return true;
  });
  return seen.size();
}

}  // namespace molfp

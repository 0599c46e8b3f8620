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
#include <vector>

#include "molfp/fingerprint.hpp"
#include "molfp/hash.hpp"
#include "molfp/molecule.hpp"

namespace molfp {

/// Atom type shared by atom pairs and torsions: (element, heavy degree,
/// aromatic flag). The aromatic flag stands in for a pi-electron count.
inline std::uint32_t pair_atom_type(const Molecule& mol, std::size_t i) {
  const auto& a = mol.atom(i);
  return hash_words(std::uint32_t{a.element}, a.heavy_degree, std::uint32_t{a.aromatic});
}

/// Unfolded atom-pair feature codes, one per unordered heavy-atom pair at
/// topological distance 1..distance_cap.
inline std::vector<std::uint32_t> atom_pair_features(const Molecule& mol, std::uint32_t distance_cap) {
  std::vector<std::uint32_t> out;
  const auto dist = shortest_path_matrix(mol);
  std::vector<std::uint32_t> types(mol.num_atoms());
  for (std::size_t i = 0; i < mol.num_atoms(); ++i) types[i] = pair_atom_type(mol, i);
  for (std::size_t i = 0; i < mol.num_atoms(); ++i) {
    if (mol.is_hydrogen(i)) continue;
    for (std::size_t j = i + 1; j < mol.num_atoms(); ++j) {
      if (mol.is_hydrogen(j)) continue;
      const auto d = dist(i, j);
      if (d == kUnreachable || d < 1 || d > distance_cap) continue;
      out.push_back(hash_words(std::min(types[i], types[j]), d, std::max(types[i], types[j])));
    }
  }
  return out;
}

inline FingerprintVector atom_pair(const Molecule& mol, const FingerprintConfig& cfg) {
  auto features = atom_pair_features(mol, cfg.distance_cap);
  for (auto& f : features) f %= cfg.length;
  return FingerprintVector::from_features(cfg.length, cfg.variant, std::move(features));
}

namespace detail {

/// Visits every simple path over heavy atoms with `min_atoms..max_atoms`
/// atoms exactly once (the orientation whose first atom index is smaller
/// than its last). `visit(atoms, bonds)`.
template <class Visit>
void for_each_simple_path(const Molecule& mol, std::size_t min_atoms, std::size_t max_atoms,
                          Visit&& visit) {
  std::vector<std::uint32_t> atoms, bonds;
  std::vector<bool> on_path(mol.num_atoms(), false);
  auto dfs = [&](auto&& self, std::uint32_t v) -> void {
    if (atoms.size() >= min_atoms && atoms.size() >= 2 && atoms.front() < atoms.back()) {
      visit(atoms, bonds);
    }
    if (atoms.size() == max_atoms) return;
    for (const auto& nb : mol.neighbors(v)) {
      if (on_path[nb.atom] || mol.is_hydrogen(nb.atom)) continue;
      on_path[nb.atom] = true;
      atoms.push_back(nb.atom);
      bonds.push_back(nb.bond);
      self(self, nb.atom);
      atoms.pop_back();
      bonds.pop_back();
      on_path[nb.atom] = false;
    }
  };
  for (std::uint32_t s = 0; s < mol.num_atoms(); ++s) {
    if (mol.is_hydrogen(s)) continue;
    on_path[s] = true;
    atoms.assign(1, s);
    bonds.clear();
    dfs(dfs, s);
    on_path[s] = false;
  }
}

}  // namespace detail

/// Unfolded torsion codes: one per linear path of four distinct heavy atoms,
/// hashed in the lexicographically smaller orientation of its type sequence.
inline std::vector<std::uint32_t> torsion_features(const Molecule& mol) {
  std::vector<std::uint32_t> types(mol.num_atoms());
  for (std::size_t i = 0; i < mol.num_atoms(); ++i) types[i] = pair_atom_type(mol, i);
  std::vector<std::uint32_t> out;
  detail::for_each_simple_path(mol, 4, 4, [&](const auto& atoms, const auto&) {
    std::vector<std::uint32_t> forward{types[atoms[0]], types[atoms[1]], types[atoms[2]], types[atoms[3]]};
    std::vector<std::uint32_t> backward(forward.rbegin(), forward.rend());
    FeatureHasher h;
    h.add(std::span<const std::uint32_t>(std::min(forward, backward)));
    out.push_back(h.finish());
  });
  return out;
}

inline FingerprintVector topological_torsion(const Molecule& mol, const FingerprintConfig& cfg) {
  auto features = torsion_features(mol);
  for (auto& f : features) f %= cfg.length;
  return FingerprintVector::from_features(cfg.length, cfg.variant, std::move(features));
}

/// Unfolded linear-path codes for paths of min_path..max_path bonds. Each
/// path is the alternating (atom code, bond order) sequence in its smaller
/// orientation; atom code = (element, aromatic, heavy degree).
inline std::vector<std::uint32_t> path_features(const Molecule& mol, std::uint32_t min_path,
                                                std::uint32_t max_path) {
  std::vector<std::uint32_t> codes(mol.num_atoms());
  for (std::size_t i = 0; i < mol.num_atoms(); ++i) {
    const auto& a = mol.atom(i);
    codes[i] = hash_words(std::uint32_t{a.element}, std::uint32_t{a.aromatic}, a.heavy_degree);
  }
  std::vector<std::uint32_t> out;
  detail::for_each_simple_path(
      mol, min_path + 1, max_path + 1, [&](const auto& atoms, const auto& bonds) {
        std::vector<std::uint32_t> forward;
        forward.reserve(atoms.size() + bonds.size());
        for (std::size_t k = 0; k < atoms.size(); ++k) {
          forward.push_back(codes[atoms[k]]);
          if (k < bonds.size()) forward.push_back(static_cast<std::uint32_t>(mol.bond(bonds[k]).order));
        }
        std::vector<std::uint32_t> backward(forward.rbegin(), forward.rend());
        FeatureHasher h;
        h.add(std::span<const std::uint32_t>(std::min(forward, backward)));
        out.push_back(h.finish());
      });
  return out;
}

/// One position per path; no multi-bit spreading.
inline FingerprintVector path_fingerprint(const Molecule& mol, const FingerprintConfig& cfg) {
  auto features = path_features(mol, cfg.min_path, cfg.max_path);
  for (auto& f : features) f %= cfg.length;
  return FingerprintVector::from_features(cfg.length, cfg.variant, std::move(features));
}

}  // namespace molfp

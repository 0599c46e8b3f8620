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
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "molfp/fingerprint.hpp"
#include "molfp/hash.hpp"
#include "molfp/molecule.hpp"

namespace molfp {

/// One surviving circular environment: the atom it is centered on, its
/// radius, and its 32-bit identifier before folding.
struct CircularEnvironment {
  std::uint32_t atom;
  std::uint32_t radius;
  std::uint32_t identifier;
};

/// Pharmacophoric feature bits seeding FCFP.
enum FeatureBit : std::uint32_t {
  kDonor = 1u << 0,
  kAcceptor = 1u << 1,
  kPositive = 1u << 2,
  kNegative = 1u << 3,
  kAromaticFeature = 1u << 4,
  kHalogen = 1u << 5,
};

inline std::uint32_t feature_bits(const Molecule& mol, std::size_t i) {
  const auto& a = mol.atom(i);
  std::uint32_t bits = 0;
  const bool n_or_o = a.element == 7 || a.element == 8;
  if (n_or_o && mol.total_h(i) > 0) bits |= kDonor;
  if (n_or_o) bits |= kAcceptor;
  if (a.formal_charge > 0) bits |= kPositive;
  if (a.formal_charge < 0) bits |= kNegative;
  if (a.aromatic) bits |= kAromaticFeature;
  if (is_halogen(a.element)) bits |= kHalogen;
  return bits;
}

inline std::uint32_t feature_invariant(const Molecule& mol, std::size_t i) {
  return hash_words(feature_bits(mol, i));
}

namespace detail {

using BondSet = std::vector<std::uint64_t>;

inline void set_bit(BondSet& s, std::size_t b) { s[b / 64] |= std::uint64_t{1} << (b % 64); }

inline void unite(BondSet& into, const BondSet& from) {
  for (std::size_t w = 0; w < into.size(); ++w) into[w] |= from[w];
}

}  // namespace detail

/// Iterative circular (Morgan-style) environments over heavy atoms.
///
/// Radius 0 yields every heavy atom with its seed code. Iteration k hashes
/// (k, own code, sorted (bond order, neighbor code) pairs). An environment
/// at k >= 1 is dropped when its bond set equals one already produced,
/// earlier iterations first and lower identifiers first within an
/// iteration; the empty bond set counts as produced by radius 0.
template <class SeedFn>
std::vector<CircularEnvironment> circular_environments(const Molecule& mol, std::uint32_t radius,
                                                       SeedFn&& seed) {
  std::vector<std::uint32_t> heavy;
  for (std::uint32_t i = 0; i < mol.num_atoms(); ++i) {
    if (!mol.is_hydrogen(i)) heavy.push_back(i);
  }
  std::vector<CircularEnvironment> out;
  std::vector<std::uint32_t> codes(mol.num_atoms(), 0);
  for (auto i : heavy) {
    codes[i] = seed(mol, i);
    out.push_back({i, 0, codes[i]});
  }

  const std::size_t words = (mol.num_bonds() + 63) / 64;
  std::vector<detail::BondSet> bond_sets(mol.num_atoms(), detail::BondSet(words, 0));
  std::set<detail::BondSet> produced{detail::BondSet(words, 0)};

  for (std::uint32_t k = 1; k <= radius; ++k) {
    std::vector<std::uint32_t> next_codes = codes;
    std::vector<detail::BondSet> next_sets = bond_sets;
    using Candidate = std::tuple<std::uint32_t, std::uint32_t>;  // (identifier, atom)
    std::vector<Candidate> candidates;
    for (auto i : heavy) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (bond order, neighbor code)
      for (const auto& nb : mol.neighbors(i)) {
        if (mol.is_hydrogen(nb.atom)) continue;
        pairs.emplace_back(static_cast<std::uint32_t>(mol.bond(nb.bond).order), codes[nb.atom]);
        detail::unite(next_sets[i], bond_sets[nb.atom]);
        detail::set_bit(next_sets[i], nb.bond);
      }
      std::sort(pairs.begin(), pairs.end());
      FeatureHasher h;
      h.add(k).add(codes[i]).add(static_cast<std::uint32_t>(pairs.size()));
      for (const auto& [order, code] : pairs) h.add(order).add(code);
      next_codes[i] = h.finish();
      candidates.emplace_back(next_codes[i], i);
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [identifier, atom] : candidates) {
      if (produced.insert(next_sets[atom]).second) out.push_back({atom, k, identifier});
    }
    codes = std::move(next_codes);
    bond_sets = std::move(next_sets);
  }
  return out;
}

namespace detail {

inline FingerprintVector fold_environments(const std::vector<CircularEnvironment>& envs,
                                           const FingerprintConfig& cfg) {
  std::vector<std::uint32_t> features;
  features.reserve(envs.size());
  for (const auto& e : envs) features.push_back(e.identifier % cfg.length);
  return FingerprintVector::from_features(cfg.length, cfg.variant, std::move(features));
}

}  // namespace detail

inline FingerprintVector ecfp(const Molecule& mol, const FingerprintConfig& cfg) {
  return detail::fold_environments(
      circular_environments(mol, cfg.radius,
                            [](const Molecule& m, std::size_t i) { return initial_atom_invariant(m, i); }),
      cfg);
}

inline FingerprintVector fcfp(const Molecule& mol, const FingerprintConfig& cfg) {
  return detail::fold_environments(
      circular_environments(mol, cfg.radius,
                            [](const Molecule& m, std::size_t i) { return feature_invariant(m, i); }),
      cfg);
}

}  // namespace molfp

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

#include <array>
#include <cstddef>
#include <string_view>

#include "molfp/element.hpp"
#include "molfp/molecule.hpp"

namespace molfp {

inline constexpr std::size_t kNumDescriptors = 10;

inline constexpr std::array<std::string_view, kNumDescriptors> kDescriptorNames{
    "molecular_weight", "heavy_atoms",   "rings",        "aromatic_rings", "hbond_donors",
    "hbond_acceptors",  "rotatable_bonds", "net_charge", "fraction_csp3",  "halogens",
};

/// Ten physicochemical descriptors, in the order of kDescriptorNames.
inline std::array<double, kNumDescriptors> descriptors(const Molecule& mol) {
  double weight = 0.0;
  int heavy = 0, donors = 0, acceptors = 0, charge = 0, carbons = 0, sp3 = 0, halogens = 0;
  for (std::size_t i = 0; i < mol.num_atoms(); ++i) {
    const auto& a = mol.atom(i);
    weight += atomic_weight(a.element) + a.implicit_h * atomic_weight(1);
    if (a.element != 1) ++heavy;
    if ((a.element == 7 || a.element == 8)) {
      ++acceptors;
      if (mol.total_h(i) > 0) ++donors;
    }
    charge += a.formal_charge;
    if (is_halogen(a.element)) ++halogens;
    if (a.element == 6) {
      ++carbons;
      bool saturated = !a.aromatic;
      for (const auto& nb : mol.neighbors(i)) {
        if (mol.bond(nb.bond).order != BondOrder::Single) saturated = false;
      }
      if (saturated) ++sp3;
    }
  }

  const auto& rings = mol.ring_info();
  int aromatic_rings = 0;
  for (const auto& ring : rings.rings) {
    bool all = true;
    for (auto atom : ring) all = all && mol.atom(atom).aromatic;
    if (all) ++aromatic_rings;
  }

  int rotatable = 0;
  for (std::size_t b = 0; b < mol.num_bonds(); ++b) {
    const auto& bond = mol.bond(b);
    if (bond.order != BondOrder::Single || rings.bond_in_ring[b]) continue;
    if (mol.is_hydrogen(bond.begin) || mol.is_hydrogen(bond.end)) continue;
    if (mol.atom(bond.begin).heavy_degree >= 2 && mol.atom(bond.end).heavy_degree >= 2) ++rotatable;
  }

  return {weight,
          static_cast<double>(heavy),
          static_cast<double>(rings.num_rings()),
          static_cast<double>(aromatic_rings),
          static_cast<double>(donors),
          static_cast<double>(acceptors),
          static_cast<double>(rotatable),
          static_cast<double>(charge),
          carbons > 0 ? static_cast<double>(sp3) / carbons : 0.0,
          static_cast<double>(halogens)};
}

}  // namespace molfp

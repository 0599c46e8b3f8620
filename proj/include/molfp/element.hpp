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
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace molfp {

using AtomicNumber = std::uint8_t;

inline constexpr AtomicNumber kMaxAtomicNumber = 118;

namespace detail {

struct ElementData {
  std::string_view symbol;
  double weight;  // standard atomic weight, or mass number of the longest-lived isotope
};

inline constexpr std::array<ElementData, kMaxAtomicNumber + 1> kElements{{
    {"*", 0.0},       {"H", 1.008},     {"He", 4.0026},   {"Li", 6.94},
    {"Be", 9.0122},   {"B", 10.81},     {"C", 12.011},    {"N", 14.007},
    {"O", 15.999},    {"F", 18.998},    {"Ne", 20.180},   {"Na", 22.990},
    {"Mg", 24.305},   {"Al", 26.982},   {"Si", 28.085},   {"P", 30.974},
    {"S", 32.06},     {"Cl", 35.45},    {"Ar", 39.948},   {"K", 39.098},
    {"Ca", 40.078},   {"Sc", 44.956},   {"Ti", 47.867},   {"V", 50.942},
    {"Cr", 51.996},   {"Mn", 54.938},   {"Fe", 55.845},   {"Co", 58.933},
    {"Ni", 58.693},   {"Cu", 63.546},   {"Zn", 65.38},    {"Ga", 69.723},
    {"Ge", 72.630},   {"As", 74.922},   {"Se", 78.971},   {"Br", 79.904},
    {"Kr", 83.798},   {"Rb", 85.468},   {"Sr", 87.62},    {"Y", 88.906},
    {"Zr", 91.224},   {"Nb", 92.906},   {"Mo", 95.95},    {"Tc", 98.0},
    {"Ru", 101.07},   {"Rh", 102.91},   {"Pd", 106.42},   {"Ag", 107.87},
    {"Cd", 112.41},   {"In", 114.82},   {"Sn", 118.71},   {"Sb", 121.76},
    {"Te", 127.60},   {"I", 126.90},    {"Xe", 131.29},   {"Cs", 132.91},
    {"Ba", 137.33},   {"La", 138.91},   {"Ce", 140.12},   {"Pr", 140.91},
    {"Nd", 144.24},   {"Pm", 145.0},    {"Sm", 150.36},   {"Eu", 151.96},
    {"Gd", 157.25},   {"Tb", 158.93},   {"Dy", 162.50},   {"Ho", 164.93},
    {"Er", 167.26},   {"Tm", 168.93},   {"Yb", 173.05},   {"Lu", 174.97},
    {"Hf", 178.49},   {"Ta", 180.95},   {"W", 183.84},    {"Re", 186.21},
    {"Os", 190.23},   {"Ir", 192.22},   {"Pt", 195.08},   {"Au", 196.97},
    {"Hg", 200.59},   {"Tl", 204.38},   {"Pb", 207.2},    {"Bi", 208.98},
    {"Po", 209.0},    {"At", 210.0},    {"Rn", 222.0},    {"Fr", 223.0},
    {"Ra", 226.0},    {"Ac", 227.0},    {"Th", 232.04},   {"Pa", 231.04},
    {"U", 238.03},    {"Np", 237.0},    {"Pu", 244.0},    {"Am", 243.0},
    {"Cm", 247.0},    {"Bk", 247.0},    {"Cf", 251.0},    {"Es", 252.0},
    {"Fm", 257.0},    {"Md", 258.0},    {"No", 259.0},    {"Lr", 262.0},
    {"Rf", 267.0},    {"Db", 268.0},    {"Sg", 269.0},    {"Bh", 270.0},
    {"Hs", 277.0},    {"Mt", 278.0},    {"Ds", 281.0},    {"Rg", 282.0},
    {"Cn", 285.0},    {"Nh", 286.0},    {"Fl", 289.0},    {"Mc", 290.0},
    {"Lv", 293.0},    {"Ts", 294.0},    {"Og", 294.0},
}};

inline constexpr std::array<int, 1> kValenceH{1};
inline constexpr std::array<int, 1> kValenceB{3};
inline constexpr std::array<int, 1> kValenceC{4};
inline constexpr std::array<int, 1> kValenceN{3};
inline constexpr std::array<int, 1> kValenceO{2};
inline constexpr std::array<int, 2> kValenceP{3, 5};
inline constexpr std::array<int, 3> kValenceS{2, 4, 6};
inline constexpr std::array<int, 1> kValenceHalogen{1};

}  // namespace detail

constexpr std::string_view element_symbol(AtomicNumber z) noexcept {
  return z <= kMaxAtomicNumber ? detail::kElements[z].symbol : std::string_view{"?"};
}

constexpr double atomic_weight(AtomicNumber z) noexcept {
  return z <= kMaxAtomicNumber ? detail::kElements[z].weight : 0.0;
}

/// Exact (case-sensitive) element symbol lookup; "*" is not an element.
constexpr std::optional<AtomicNumber> element_from_symbol(std::string_view symbol) noexcept {
  for (AtomicNumber z = 1; z <= kMaxAtomicNumber; ++z) {
    if (detail::kElements[z].symbol == symbol) return z;
  }
  return std::nullopt;
}

/// Permitted valences of neutral atoms. Empty means "any valence", in which
/// case no implicit hydrogens are ever added.
constexpr std::span<const int> permitted_valences(AtomicNumber z) noexcept {
  switch (z) {
    case 1: return detail::kValenceH;
    case 5: return detail::kValenceB;
    case 6: return detail::kValenceC;
    case 7: return detail::kValenceN;
    case 8: return detail::kValenceO;
    case 15: return detail::kValenceP;
    case 16: return detail::kValenceS;
    case 9:
    case 17:
    case 35:
    case 53: return detail::kValenceHalogen;
    default: return {};
  }
}

constexpr bool has_valence_model(AtomicNumber z) noexcept { return !permitted_valences(z).empty(); }

/// Valence shift applied to every permitted valence of a charged atom.
/// Cationic N/P/O/S/halogens gain one bond per unit charge (N+ is
/// isoelectronic with C), anions lose one; B and C lose one bond per unit of
/// charge of either sign, except B- which is tetravalent.
constexpr int charge_valence_shift(AtomicNumber z, int charge) noexcept {
  if (charge == 0) return 0;
  switch (z) {
    case 5: return -charge;                         // B-: 4, B+: 2
    case 6: return charge < 0 ? charge : -charge;   // C+ and C-: 3
    default: return charge;                         // N+: 4, O-: 1, O+: 3
  }
}

/// Organic-subset symbols: the only atoms that may appear outside brackets.
constexpr bool in_organic_subset(AtomicNumber z) noexcept {
  switch (z) {
    case 5: case 6: case 7: case 8: case 9: case 15: case 16: case 17: case 35: case 53:
      return true;
    default:
      return false;
  }
}

/// Elements that may be written in lowercase aromatic form.
constexpr bool may_be_aromatic(AtomicNumber z) noexcept {
  switch (z) {
    case 5: case 6: case 7: case 8: case 15: case 16: case 33: case 34: case 52:
      return true;
    default:
      return false;
  }
}

constexpr bool is_halogen(AtomicNumber z) noexcept {
  return z == 9 || z == 17 || z == 35 || z == 53 || z == 85;
}

}  // namespace molfp

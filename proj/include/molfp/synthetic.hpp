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
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace molfp {

namespace detail {

// Chain blocks. Each block's first atom bonds to the previous block's last
// atom; every atom keeps enough free valence for that.
inline constexpr std::array<std::string_view, 20> kBackboneBlocks{
    "C",          "C",         "CC",          "CCC",        "N",           "O",          "S",
    "C=C",        "C#C",       "C(=O)N",      "C(=O)O",     "c1ccccc1",    "c1ccncc1",   "c1ccoc1",
    "c1cc[nH]c1", "C1CCCCC1",  "C1CCNCC1",    "c1ccc2ccccc2c1", "C1CC1",   "c1ccsc1",
};

// Terminal groups hung off a backbone "C" block as a branch.
inline constexpr std::array<std::string_view, 12> kSubstituents{
    "F", "Cl", "Br", "O", "N", "C", "C(F)(F)F", "OC", "C(=O)O", "C#N", "=O", "[N+](=O)[O-]",
};

/// Uniform draw in [0, n). Plain modulo over the 64-bit engine output keeps
/// the sequence identical across standard libraries (distribution classes
/// are implementation-defined).
inline std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace detail

/// One synthetic drug-like SMILES built from `rng`: 2..9 backbone blocks
/// with occasional branch substituents on sp3 carbons.
inline std::string synthetic_smiles(std::mt19937_64& rng) {
  std::string out;
  const std::size_t blocks = 2 + detail::draw(rng, 8);
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto block = detail::kBackboneBlocks[detail::draw(rng, detail::kBackboneBlocks.size())];
    out += block;
    if (block == "C" && detail::draw(rng, 10) < 4) {
      out += '(';
      out += detail::kSubstituents[detail::draw(rng, detail::kSubstituents.size())];
      out += ')';
    }
  }
  return out;
}

/// `n` SMILES from a fixed seed; the same (n, seed) always yields the same
/// list.
inline std::vector<std::string> synthetic_corpus(std::size_t n, std::uint64_t seed = 20240101) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(synthetic_smiles(rng));
  return out;
}

}  // namespace molfp

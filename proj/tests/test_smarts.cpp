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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace molfp;

namespace {

const std::vector<std::string>& kGridPatterns = molfp::testing::smarts_grid_patterns();

std::vector<Molecule> small_molecules() {
  std::vector<Molecule> out;
  for (const auto& e : molfp::testing::corpus()) {
    auto m = parse_molecule(e.smiles);
    if (m.num_atoms() <= 10) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

TEST(SmartsParse, Examples) {
  const auto p = parse_smarts("[OX2H]");
  ASSERT_EQ(p.num_atoms(), 1u);
  const auto ethanol = parse_molecule("CCO");
  EXPECT_FALSE(p.atom_matches(0, ethanol, 1));
  EXPECT_TRUE(p.atom_matches(0, ethanol, 2));
  EXPECT_FALSE(p.atom_matches(0, parse_molecule("COC"), 1));
  EXPECT_FALSE(p.atom_matches(0, parse_molecule("C=O"), 1));

  const auto q = parse_smarts("[C,N;R]");
  EXPECT_TRUE(has_match(q, parse_molecule("C1CC1")));
  EXPECT_TRUE(has_match(q, parse_molecule("N1CC1")));
  EXPECT_FALSE(has_match(q, parse_molecule("CCN")));
  EXPECT_FALSE(has_match(q, parse_molecule("O1OO1")));

  try {
    parse_smarts("$([CX3]=O)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedPrimitive);
  }
  EXPECT_THROW(parse_smarts("[$(C=O)]"), ParseError);
}

TEST(SmartsParse, Precedence) {
  // '!' binds tighter than '&', which binds tighter than ',', then ';'.
  const auto m = parse_molecule("C1CC1N");
  const auto ring_n_or_c = parse_smarts("[N,C&R]");  // N or (C and ring)
  EXPECT_TRUE(ring_n_or_c.atom_matches(0, m, 3));
  EXPECT_TRUE(ring_n_or_c.atom_matches(0, m, 0));
  const auto low = parse_smarts("[N,C;R]");  // (N or C) and ring
  EXPECT_FALSE(low.atom_matches(0, m, 3));
  EXPECT_TRUE(low.atom_matches(0, m, 0));
  const auto neg = parse_smarts("[!N&!R]");
  EXPECT_FALSE(neg.atom_matches(0, m, 0));
  EXPECT_FALSE(neg.atom_matches(0, m, 3));
  EXPECT_TRUE(neg.atom_matches(0, parse_molecule("CO"), 0));
  // Implicit '&' between adjacent primitives.
  EXPECT_TRUE(parse_smarts("[CR]").atom_matches(0, m, 0));
  EXPECT_FALSE(parse_smarts("[CR]").atom_matches(0, parse_molecule("CC"), 0));
}

TEST(SmartsParse, Errors) {
  for (const std::string bad : {"", "[C", "C)", "C1C", "[C&]", "[,C]", "C=", "[Xx]", "C%"}) {
    EXPECT_THROW(parse_smarts(bad), ParseError) << bad;
  }
}

TEST(SmartsMatch, Examples) {
  EXPECT_EQ(match(parse_smarts("[OX2H]"), parse_molecule("CCO")).mappings.size(), 1u);
  EXPECT_EQ(match(parse_smarts("[R]"), parse_molecule("C1CCCCC1")).mappings.size(), 6u);
  const auto benz = match(parse_smarts("c1ccccc1"), parse_molecule("c1ccccc1"));
  EXPECT_EQ(benz.mappings.size(), 12u);
  EXPECT_EQ(benz.unique_atom_sets.size(), 1u);
  EXPECT_FALSE(has_match(parse_smarts("[F,Cl,Br,I]"), parse_molecule("CCO")));
  EXPECT_EQ(count_unique(parse_smarts("c1ccccc1"), parse_molecule("c1ccccc1")), 1u);
  EXPECT_EQ(count_unique(parse_smarts("[OX2H]"), parse_molecule("OCCO")), 2u);
}

TEST(SmartsMatch, BenzeneAutomorphismsMatchOracle) {
  const auto p = parse_smarts("c1ccccc1");
  const auto m = parse_molecule("c1ccccc1");
  // Enumerates all 6^6 assignments.
  std::set<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> a(6);
  std::function<void(std::size_t)> rec = [&](std::size_t q) {
    if (q == 6) {
      for (std::uint32_t b = 0; b < p.num_bonds(); ++b) {
        const auto& qb = p.bond(b);
        const auto tb = m.bond_between(a[qb.begin], a[qb.end]);
        if (!tb || !p.bond_matches(b, m, *tb)) return;
      }
      if (std::set<std::uint32_t>(a.begin(), a.end()).size() == 6) found.insert(a);
      return;
    }
    for (std::uint32_t t = 0; t < 6; ++t) {
      a[q] = t;
      rec(q + 1);
    }
  };
  rec(0);
  EXPECT_EQ(found.size(), 12u);
}

TEST(SmartsMatch, DefaultBondBetweenAromaticAtoms) {
  // "cc" also matches the single bond joining two aromatic rings.
  const auto biphenyl = parse_molecule("c1ccccc1-c1ccccc1");
  const auto p = parse_smarts("cc");
  bool crossed = false;
  for (const auto& m : match(p, biphenyl).mappings) crossed |= (m[0] < 6) != (m[1] < 6);
  EXPECT_TRUE(crossed);
  EXPECT_TRUE(has_match(parse_smarts("c:c"), biphenyl));
  bool aromatic_only_crossed = false;
  for (const auto& m : match(parse_smarts("c:c"), biphenyl).mappings)
    aromatic_only_crossed |= (m[0] < 6) != (m[1] < 6);
  EXPECT_FALSE(aromatic_only_crossed);
  // Between aliphatic atoms the default is single only.
  EXPECT_FALSE(has_match(parse_smarts("CC"), parse_molecule("C=C")));
}

TEST(SmartsMatch, AgreesWithBruteForceOracle) {
  const auto mols = small_molecules();
  ASSERT_GE(mols.size(), 60u);
  std::size_t nonempty = 0;
  for (const auto& text : kGridPatterns) {
    const auto p = parse_smarts(text);
    ASSERT_LE(p.num_atoms(), 4u) << text;
    for (const auto& m : mols) {
      const auto got = match(p, m);
      const std::set<std::vector<std::uint32_t>> mine(got.mappings.begin(), got.mappings.end());
      ASSERT_EQ(mine.size(), got.mappings.size()) << "duplicate mapping for " << text;
      const auto expected = molfp::testing::brute_force_matches(p, m);
      ASSERT_EQ(mine, expected) << text << " on " << write_canonical_smiles(m);
      nonempty += !expected.empty();
    }
  }
  EXPECT_GT(nonempty, 300u);
}

TEST(SmartsMatch, HasMatchIffMappings) {
  for (const auto& text : kGridPatterns) {
    const auto p = parse_smarts(text);
    for (const auto& e : molfp::testing::corpus()) {
      const auto m = parse_molecule(e.smiles);
      const auto all = match(p, m);
      EXPECT_EQ(has_match(p, m), !all.mappings.empty()) << text << " " << e.smiles;
      EXPECT_EQ(count_unique(p, m), all.unique_atom_sets.size()) << text << " " << e.smiles;
    }
  }
}

TEST(SmartsMatch, DeterministicOrder) {
  const auto p = parse_smarts("C~*");
  const auto m = parse_molecule("CC(C)C(=O)NC1CCCCC1");
  EXPECT_EQ(match(p, m).mappings, match(p, m).mappings);
}

TEST(SmartsMatch, InvariantUnderTargetPermutation) {
  std::mt19937_64 rng(11);
  for (const auto& text : kGridPatterns) {
    const auto p = parse_smarts(text);
    for (std::size_t k = 0; k < molfp::testing::corpus().size(); k += 7) {
      const auto draft = parse_smiles(molfp::testing::corpus()[k].smiles);
      const auto perm = molfp::testing::random_permutation(draft.atoms.size(), rng);
      const auto original = sanitize(draft);
      const auto shuffled = sanitize(molfp::testing::permute_draft(draft, perm, rng));
      std::set<std::vector<std::uint32_t>> mapped, direct;
      for (auto s : match(p, original).unique_atom_sets) {
        for (auto& a : s) a = perm[a];
        std::sort(s.begin(), s.end());
        mapped.insert(s);
      }
      for (const auto& s : match(p, shuffled).unique_atom_sets) direct.insert(s);
      EXPECT_EQ(mapped, direct) << text << " " << molfp::testing::corpus()[k].smiles;
    }
  }
}

TEST(KeySet, DefaultSetShipsAtLeastFortyKeys) {
  const auto& keys = default_key_set();
  EXPECT_GE(keys.size(), 40u);
  std::set<std::string> ids;
  for (const auto& k : keys.keys) ids.insert(k.id);
  EXPECT_EQ(ids.size(), keys.size());
}

TEST(KeySet, EmbeddedTextMatchesDataFile) {
  std::ifstream in(std::string(MOLFP_REPO_DATA_DIR) + "/default_keys.tsv");
  ASSERT_TRUE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), std::string(kDefaultKeySetText.substr(1)));
  EXPECT_EQ(load_key_set(std::string(MOLFP_REPO_DATA_DIR) + "/default_keys.tsv").size(), default_key_set().size());
}

TEST(KeySet, ParseErrors) {
  EXPECT_EQ(parse_key_set("# comment\n\nk1\tC\tcarbon\n").size(), 1u);
  try {
    parse_key_set("k1\tC\tcarbon\nk2\t[C\tbroken\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::KeySet);
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_key_set("k1 C carbon\n"), FormatError);
  EXPECT_THROW(parse_key_set("\tC\tcarbon\n"), FormatError);
  EXPECT_THROW(load_key_set("/nonexistent/keys.tsv"), Error);
}

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

#include <random>
#include <set>

#include "support.hpp"

using namespace molfp;
using molfp::testing::corpus;

namespace {

ErrorKind parse_error_kind(const std::string& s) {
  try {
    parse_molecule(s);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted " << s;
  return ErrorKind::Io;
}

}  // namespace

TEST(Tokenizer, SpansCoverInput) {
  const std::string text = "CC(=O)[NH3+].c1ccccc1%12CC%12";
  const auto tokens = tokenize_smiles(text);
  ASSERT_FALSE(tokens.empty());
  EXPECT_EQ(tokens.front().begin, 0u);
  EXPECT_EQ(tokens.back().end, text.size());
  for (std::size_t i = 1; i < tokens.size(); ++i) EXPECT_EQ(tokens[i].begin, tokens[i - 1].end);
  for (const auto& t : tokens) EXPECT_EQ(t.text, std::string_view(text).substr(t.begin, t.end - t.begin));
}

TEST(Tokenizer, Kinds) {
  const auto tokens = tokenize_smiles("Cl[C@H]1=C(.)%10");
  std::vector<SmilesTokenKind> kinds;
  for (const auto& t : tokens) kinds.push_back(t.kind);
  EXPECT_EQ(kinds, (std::vector<SmilesTokenKind>{
                       SmilesTokenKind::OrganicAtom, SmilesTokenKind::BracketAtom, SmilesTokenKind::RingClosure,
                       SmilesTokenKind::Bond, SmilesTokenKind::OrganicAtom, SmilesTokenKind::BranchOpen,
                       SmilesTokenKind::Dot, SmilesTokenKind::BranchClose, SmilesTokenKind::RingClosure}));
  EXPECT_EQ(tokens[0].text, "Cl");
  EXPECT_EQ(tokens.back().text, "%10");
}

TEST(Tokenizer, OffsetsRespectSurroundingWhitespace) {
  const auto tokens = tokenize_smiles("  CO ");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].begin, 2u);
  EXPECT_EQ(tokens[1].end, 4u);
}

TEST(Parser, Examples) {
  const auto ethanol = parse_smiles("CCO");
  EXPECT_EQ(ethanol.atoms.size(), 3u);
  ASSERT_EQ(ethanol.bonds.size(), 2u);
  for (const auto& b : ethanol.bonds) EXPECT_EQ(b.order, BondOrder::Single);

  EXPECT_EQ(parse_error_kind("C1CC"), ErrorKind::UnclosedRing);

  const auto neo = parse_molecule("C(C)(C)(C)C");
  EXPECT_EQ(neo.atom(0).degree, 4u);
}

TEST(Parser, BracketAtoms) {
  const auto d = parse_smiles("[13CH3:7][NH3+].[O-2]");
  ASSERT_EQ(d.atoms.size(), 3u);
  EXPECT_EQ(d.atoms[0].element, 6);
  EXPECT_EQ(d.atoms[0].isotope, 13u);
  EXPECT_EQ(d.atoms[0].explicit_h, 3u);
  EXPECT_EQ(d.atoms[1].formal_charge, 1);
  EXPECT_EQ(d.atoms[1].explicit_h, 3u);
  EXPECT_EQ(d.atoms[2].formal_charge, -2);
  EXPECT_EQ(d.atoms[2].explicit_h, 0u);
  EXPECT_EQ(parse_smiles("[Fe+++]").atoms[0].formal_charge, 3);
  EXPECT_EQ(parse_smiles("[C+15]").atoms[0].formal_charge, 15);
  EXPECT_EQ(parse_error_kind("[C+16]"), ErrorKind::ChargeOverflow);
  EXPECT_EQ(parse_smiles("[nH]1cccc1").atoms[0].aromatic, true);
}

TEST(Parser, BondsAndRings) {
  const auto d = parse_smiles("C=1CCCCC1C#N");
  ASSERT_EQ(d.bonds.size(), 8u);
  const auto closure = d.find_bond(0, 5);
  ASSERT_TRUE(closure);
  EXPECT_EQ(d.bonds[*closure].order, BondOrder::Double);
  EXPECT_EQ(d.bonds.back().order, BondOrder::Triple);

  const auto benzene = parse_smiles("c1ccccc1");
  for (const auto& b : benzene.bonds) EXPECT_EQ(b.order, BondOrder::Aromatic);
  const auto biphenyl = parse_smiles("c1ccccc1-c1ccccc1");
  EXPECT_EQ(biphenyl.bonds[6].order, BondOrder::Single);

  const auto pct = parse_smiles("C%12CC%12");
  EXPECT_TRUE(pct.find_bond(0, 2));
  // Digits are reusable once closed.
  EXPECT_EQ(parse_smiles("C1CC1C1CC1").bonds.size(), 7u);
}

TEST(Parser, DotsMakeComponents) {
  EXPECT_EQ(parse_molecule("C.C").num_components(), 2u);
  EXPECT_EQ(parse_molecule("[Na+].[Cl-]").num_bonds(), 0u);
  // Ring bonds may span a dot.
  EXPECT_EQ(parse_molecule("C1.C1").num_bonds(), 1u);
}

TEST(Parser, StereoIsIgnoredWithFlag) {
  EXPECT_FALSE(parse_smiles("CC(N)C(=O)O").stereo_ignored);
  const auto d = parse_smiles("C[C@H](N)C(=O)O");
  EXPECT_TRUE(d.stereo_ignored);
  EXPECT_TRUE(parse_smiles("F/C=C/F").stereo_ignored);
  EXPECT_EQ(write_canonical_smiles(sanitize(d)), write_canonical_smiles(parse_molecule("CC(N)C(=O)O")));
}

TEST(Parser, SourceTextKept) { EXPECT_EQ(parse_smiles("CCO").source_text, "CCO"); }

TEST(Parser, SyntaxErrorsCarryPosition) {
  for (const std::string bad : {"X", "CQC", "C==", "C()", "C%1", "[C", "C]", "C11", "C..C", "C=1CC-1"}) {
    try {
      parse_smiles(bad);
      ADD_FAILURE() << bad;
    } catch (const ParseError& e) {
      EXPECT_LT(e.position(), bad.size()) << bad;
    }
  }
  EXPECT_THROW(parse_smiles(""), ParseError);
  EXPECT_THROW(parse_smiles("   "), ParseError);
}

TEST(Parser, InvalidCorpusRaisesDocumentedKinds) {
  const auto invalid = molfp::testing::load_pairs("invalid.smi");
  ASSERT_GE(invalid.size(), 20u);
  for (const auto& e : invalid) {
    try {
      parse_molecule(e.smiles);
      ADD_FAILURE() << "accepted " << e.smiles;
    } catch (const Error& err) {
      EXPECT_EQ(std::string(err.kind_name()), e.name) << e.smiles << ": " << err.what();
    }
  }
}

TEST(Parser, ValidCorpusAccepted) {
  ASSERT_GE(corpus().size(), 200u);
  for (const auto& e : corpus()) EXPECT_NO_THROW(parse_molecule(e.smiles)) << e.smiles;
}

TEST(CanonicalRanks, Examples) {
  const auto benzene = canonical_ranks(parse_molecule("c1ccccc1"));
  EXPECT_EQ(std::set<std::uint32_t>(benzene.symmetry_classes.begin(), benzene.symmetry_classes.end()).size(), 1u);
  const auto ethanol = canonical_ranks(parse_molecule("CCO"));
  EXPECT_EQ(std::set<std::uint32_t>(ethanol.symmetry_classes.begin(), ethanol.symmetry_classes.end()).size(), 3u);
  const auto propane = canonical_ranks(parse_molecule("CCC"));
  EXPECT_EQ(propane.symmetry_classes[0], propane.symmetry_classes[2]);
  EXPECT_NE(propane.symmetry_classes[0], propane.symmetry_classes[1]);
}

TEST(CanonicalRanks, RanksArePermutations) {
  for (const auto& e : corpus()) {
    const auto r = canonical_ranks(parse_molecule(e.smiles)).ranks;
    std::vector<std::uint32_t> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t i = 0; i < sorted.size(); ++i) ASSERT_EQ(sorted[i], i) << e.smiles;
  }
}

TEST(CanonicalSmiles, Examples) {
  EXPECT_EQ(write_canonical_smiles(parse_molecule("OCC")), write_canonical_smiles(parse_molecule("CCO")));
  EXPECT_EQ(write_canonical_smiles(parse_molecule("C")), "C");
  EXPECT_EQ(write_canonical_smiles(parse_molecule("c1ccccc1")), "c1ccccc1");
  EXPECT_EQ(write_canonical_smiles(parse_molecule("C1=CC=CC=C1")), "C1C=CC=CC=1");
  EXPECT_EQ(write_canonical_smiles(parse_molecule("[NH4+]")), "[NH4+]");
  EXPECT_EQ(write_canonical_smiles(parse_molecule("[13CH4]")), "[13CH4]");
  EXPECT_EQ(write_canonical_smiles(parse_molecule("[CH2]")), "[CH2]");
  EXPECT_EQ(write_canonical_smiles(parse_molecule("[Cl-].[Na+]")),
            write_canonical_smiles(parse_molecule("[Na+].[Cl-]")));
}

TEST(CanonicalSmiles, BondSymbolsAreExplicitWhereNeeded) {
  // Single bond between aromatic atoms must be written.
  const auto biphenyl = write_canonical_smiles(parse_molecule("c1ccccc1c1ccccc1"));
  EXPECT_NE(biphenyl.find('-'), std::string::npos);
  EXPECT_TRUE(molfp::testing::isomorphic(parse_molecule(biphenyl), parse_molecule("c1ccccc1-c1ccccc1")));
}

TEST(CanonicalSmiles, FixedPointOnCorpus) {
  for (const auto& e : corpus()) {
    const auto once = write_canonical_smiles(parse_molecule(e.smiles));
    EXPECT_EQ(write_canonical_smiles(parse_molecule(once)), once) << e.smiles;
  }
}

TEST(CanonicalSmiles, RoundTripIsomorphic) {
  for (const auto& e : corpus()) {
    const auto m = parse_molecule(e.smiles);
    EXPECT_TRUE(molfp::testing::isomorphic(m, parse_molecule(write_canonical_smiles(m)))) << e.smiles;
  }
}

TEST(CanonicalSmiles, PermutationInvariant) {
  std::mt19937_64 rng(3);
  for (const auto& e : corpus()) {
    const auto expected = write_canonical_smiles(parse_molecule(e.smiles));
    for (int t = 0; t < 5; ++t) {
      EXPECT_EQ(write_canonical_smiles(molfp::testing::relabeled(e.smiles, rng)), expected) << e.smiles;
    }
  }
}

TEST(Isomorphism, OracleSanity) {
  EXPECT_TRUE(molfp::testing::isomorphic(parse_molecule("CCO"), parse_molecule("OCC")));
  EXPECT_FALSE(molfp::testing::isomorphic(parse_molecule("CCO"), parse_molecule("COC")));
  EXPECT_FALSE(molfp::testing::isomorphic(parse_molecule("C=CC"), parse_molecule("CCC")));
  EXPECT_FALSE(molfp::testing::isomorphic(parse_molecule("c1ccccc1"), parse_molecule("C1=CC=CC=C1")));
}

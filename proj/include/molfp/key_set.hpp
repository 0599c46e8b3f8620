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

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "molfp/error.hpp"
#include "molfp/smarts.hpp"

namespace molfp {

struct SubstructureKey {
  std::string id;
  std::string smarts;
  std::string description;
  SmartsPattern pattern;
};

/// Ordered, compiled substructure keys. Position i of a substructure
/// fingerprint corresponds to keys[i].
struct KeySet {
  std::vector<SubstructureKey> keys;

  std::size_t size() const noexcept { return keys.size(); }
  bool empty() const noexcept { return keys.empty(); }
};

/// Parses the key-set text format: one `<id>\t<smarts>\t<description>` record
/// per line; blank lines and lines starting with '#' are skipped. Any
/// malformed record or uncompilable pattern throws FormatError(KeySet).
inline KeySet parse_key_set(std::string_view text) {
  KeySet set;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos)
      throw FormatError(ErrorKind::KeySet, line_no, "expected <id><TAB><smarts><TAB><description>");
    SubstructureKey key;
    key.id = std::string(line.substr(0, tab1));
    key.smarts = std::string(line.substr(tab1 + 1, tab2 - tab1 - 1));
    key.description = std::string(line.substr(tab2 + 1));
    if (key.id.empty()) throw FormatError(ErrorKind::KeySet, line_no, "empty key id");
    try {
      key.pattern = parse_smarts(key.smarts);
    } catch (const ParseError& e) {
      throw FormatError(ErrorKind::KeySet, line_no,
                        "key " + key.id + ": " + std::string(e.kind_name()) + ": " + e.what());
    }
    set.keys.push_back(std::move(key));
  }
  return set;
}

inline KeySet load_key_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::KeySet, "cannot open key set file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_key_set(buffer.str());
}

/// Text of the built-in key set (also shipped as data/default_keys.tsv).
inline constexpr std::string_view kDefaultKeySetText = R"keys(
# Default substructure key set: common functional groups and ring features.
# Format: <key_id><TAB><smarts><TAB><description>
K001	[OX2H][CX4]	aliphatic hydroxyl
K002	[OX2H]c	phenol
K003	[CX3](=O)[OX2H1]	carboxylic acid
K004	[CX3](=O)[OX2][#6]	ester
K005	[CX3](=O)[NX3]	amide
K006	[CX3H1](=O)[#6]	aldehyde
K007	[#6][CX3](=O)[#6]	ketone
K008	[OD2]([#6])[#6]	ether
K009	[NX3;H2][CX4]	primary aliphatic amine
K010	[NX3;H1]([CX4])[CX4]	secondary aliphatic amine
K011	[NX3;H0]([CX4])([CX4])[CX4]	tertiary aliphatic amine
K012	[NX3;H2]c	aniline
K013	[NX1]#[CX2]	nitrile
K014	[N+](=O)[O-]	nitro
K015	[F,Cl,Br,I]	halogen
K016	[CX4][F,Cl,Br,I]	alkyl halide
K017	c[F,Cl,Br,I]	aryl halide
K018	[SX2H]	thiol
K019	[SX2]([#6])[#6]	thioether
K020	[SX4](=O)(=O)	sulfonyl
K021	[SX4](=O)(=O)[NX3]	sulfonamide
K022	c1ccccc1	benzene ring
K023	n	aromatic nitrogen
K024	[o,s]	aromatic oxygen or sulfur
K025	[nH]	pyrrole-type nitrogen
K026	[R]	ring atom
K027	[r3,r4]	small ring atom
K028	[r5]	five-membered ring atom
K029	[r6]	six-membered ring atom
K030	[r7,r8]	medium ring atom
K031	[a;R2]	fused aromatic atom
K032	[CX3]=[CX3]	alkene
K033	[CX2]#[CX2]	alkyne
K034	[CX3]=[OX1]	carbonyl
K035	[CH3]	methyl
K036	[CX4H2]	methylene
K037	[PX4](=O)	phosphoryl
K038	[+]	cation
K039	[-]	anion
K040	[NX3][CX3](=O)[NX3]	urea
K041	[NX2]=[CX3]	imine
K042	[NX3][NX3]	hydrazine
K043	[OX2][OX2]	peroxide
K044	[CX3](=O)[Cl,Br]	acyl halide
K045	[!#6;!#1]	heteroatom
K046	[CX4;!R]	acyclic sp3 carbon
K047	[C;D4]	quaternary carbon
K048	[#6]-!@[#6]	acyclic carbon-carbon single bond
K049	[#7;R]	ring nitrogen
K050	[OX2H][CX3]=[CX3]	enol
K051	c-c	biaryl bond
K052	[#6]~[#7]~[#6]~[#7]	C-N-C-N chain
)keys";

inline const KeySet& default_key_set() {
  static const KeySet set = parse_key_set(kDefaultKeySetText);
  return set;
}

}  // namespace molfp

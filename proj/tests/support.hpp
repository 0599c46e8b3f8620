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

// Corpus loading, atom relabeling, and brute-force reference implementations
// shared by the unit and acceptance tests. The references favor obviousness
// over speed and deliberately avoid calling the code they check.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "molfp/molfp.hpp"

namespace molfp::testing {

struct CorpusEntry {
  std::string smiles;
  std::string name;
};

inline std::string data_path(const std::string& file) { return std::string(MOLFP_TEST_DATA_DIR) + "/" + file; }

/// `<smiles> <second column>` records; '#' and blank lines skipped.
inline std::vector<CorpusEntry> load_pairs(const std::string& file) {
  std::ifstream in(data_path(file));
  if (!in) throw std::runtime_error("missing test data " + file);
  std::vector<CorpusEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    CorpusEntry e;
    ss >> e.smiles >> e.name;
    if (!e.smiles.empty()) out.push_back(e);
  }
  return out;
}

inline const std::vector<CorpusEntry>& corpus() {
  static const auto c = load_pairs("corpus.smi");
  return c;
}

inline std::vector<std::string> corpus_smiles() {
  std::vector<std::string> out;
  for (const auto& e : corpus()) out.push_back(e.smiles);
  return out;
}

/// Draft with atoms renumbered so that old atom i becomes perm[i]; bonds are
/// re-listed in a shuffled order with random endpoint orientation.
inline MoleculeDraft permute_draft(const MoleculeDraft& d, const std::vector<std::uint32_t>& perm,
                                   std::mt19937_64& rng) {
  MoleculeDraft out;
  out.atoms.resize(d.atoms.size());
  for (std::size_t i = 0; i < d.atoms.size(); ++i) out.atoms[perm[i]] = d.atoms[i];
  std::vector<BondDraft> bonds;
  for (const auto& b : d.bonds) {
    BondDraft nb{perm[b.begin], perm[b.end], b.order};
    if (rng() & 1) std::swap(nb.begin, nb.end);
    bonds.push_back(nb);
  }
  std::shuffle(bonds.begin(), bonds.end(), rng);
  out.bonds = std::move(bonds);
  return out;
}

inline std::vector<std::uint32_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Sanitized molecule of `smiles` under a random atom relabeling.
inline Molecule relabeled(const std::string& smiles, std::mt19937_64& rng) {
  const auto draft = parse_smiles(smiles);
  return sanitize(permute_draft(draft, random_permutation(draft.atoms.size(), rng), rng));
}

// ---------------------------------------------------------------------------
// Graph isomorphism (exact backtracking over labeled graphs).

struct LabeledGraph {
  std::vector<std::tuple<int, int, int, int, int>> labels;  // element, charge, isotope, total H, aromatic
  std::vector<std::vector<int>> order;                      // order[i][j], 0 when no bond
};

inline LabeledGraph labeled(const Molecule& m) {
  LabeledGraph g;
  const auto n = m.num_atoms();
  g.order.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = m.atom(i);
    g.labels.emplace_back(a.element, a.formal_charge, a.isotope ? static_cast<int>(*a.isotope) : -1,
                          static_cast<int>(m.total_h(i)), a.aromatic ? 1 : 0);
  }
  for (const auto& b : m.bonds()) {
    g.order[b.begin][b.end] = g.order[b.end][b.begin] = static_cast<int>(b.order);
  }
  return g;
}

inline bool isomorphic(const Molecule& a, const Molecule& b) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds()) return false;
  const auto ga = labeled(a), gb = labeled(b);
  const auto n = a.num_atoms();
  auto degree = [](const LabeledGraph& g, std::size_t i) {
    return std::count_if(g.order[i].begin(), g.order[i].end(), [](int o) { return o != 0; });
  };
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t] || ga.labels[i] != gb.labels[t] || degree(ga, i) != degree(gb, t)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = ga.order[i][j] == gb.order[t][static_cast<std::size_t>(map[j])];
      if (!ok) continue;
      map[i] = static_cast<int>(t);
      used[t] = true;
      if (place(i + 1)) return true;
      used[t] = false;
      map[i] = -1;
    }
    return false;
  };
  return place(0);
}

// ---------------------------------------------------------------------------
// Cycles: exhaustive simple-cycle enumeration as bond sets.

/// Every simple cycle of the graph as a sorted list of bond indices.
inline std::vector<std::vector<std::uint32_t>> all_simple_cycles(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n);
  for (std::uint32_t b = 0; b < edges.size(); ++b) {
    adj[edges[b].first].push_back({edges[b].second, b});
    adj[edges[b].second].push_back({edges[b].first, b});
  }
  std::set<std::vector<std::uint32_t>> found;
  std::vector<bool> on(n, false);
  std::vector<std::uint32_t> bonds;
  // Cycles are rooted at their smallest atom.
  std::function<void(std::uint32_t, std::uint32_t)> dfs = [&](std::uint32_t root, std::uint32_t v) {
    for (const auto& [w, b] : adj[v]) {
      if (w == root && bonds.size() >= 2 && std::find(bonds.begin(), bonds.end(), b) == bonds.end()) {
        auto cyc = bonds;
        cyc.push_back(b);
        std::sort(cyc.begin(), cyc.end());
        found.insert(cyc);
      }
      if (w <= root || on[w]) continue;
      on[w] = true;
      bonds.push_back(b);
      dfs(root, w);
      bonds.pop_back();
      on[w] = false;
    }
  };
  for (std::uint32_t r = 0; r < n; ++r) {
    on[r] = true;
    dfs(r, r);
    on[r] = false;
  }
  return {found.begin(), found.end()};
}

/// Rank over GF(2) of bond-set vectors.
inline std::size_t gf2_rank(std::vector<std::vector<std::uint32_t>> sets, std::size_t num_bonds) {
  std::vector<std::vector<bool>> rows;
  for (const auto& s : sets) {
    std::vector<bool> r(num_bonds, false);
    for (auto b : s) r[b] = !r[b];
    rows.push_back(r);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < num_bonds && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][col]) {
        for (std::size_t c = 0; c < num_bonds; ++c) rows[r][c] = rows[r][c] != rows[rank][c];
      }
    }
    ++rank;
  }
  return rank;
}

/// Sorted cycle lengths of a minimum cycle basis (the length vector is the
/// same for every minimum basis). Greedy over all simple cycles by length.
inline std::vector<std::size_t> minimum_basis_lengths(std::size_t n, const std::vector<Edge>& edges) {
  auto cycles = all_simple_cycles(n, edges);
  std::stable_sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::vector<std::uint32_t>> basis;
  std::vector<std::size_t> lengths;
  for (const auto& c : cycles) {
    basis.push_back(c);
    if (gf2_rank(basis, edges.size()) == basis.size()) {
      lengths.push_back(c.size());
    } else {
      basis.pop_back();
    }
  }
  return lengths;
}

inline std::vector<Edge> edges_of(const Molecule& m) {
  std::vector<Edge> out;
  for (const auto& b : m.bonds()) out.emplace_back(b.begin, b.end);
  return out;
}

/// First disagreement between the perceived rings of `m` and exhaustive
/// cycle enumeration, or nullopt when everything agrees.
inline std::optional<std::string> ring_oracle_mismatch(const Molecule& m) {
  const auto& info = m.ring_info();
  const auto edges = edges_of(m);
  std::vector<std::size_t> sizes;
  for (const auto& ring : info.rings) {
    if (ring.size() < 3 || std::set<std::uint32_t>(ring.begin(), ring.end()).size() != ring.size())
      return "ring is not a simple cycle";
    for (std::size_t k = 0; k < ring.size(); ++k) {
      if (!m.bond_between(ring[k], ring[(k + 1) % ring.size()])) return "ring atoms are not consecutive";
    }
    sizes.push_back(ring.size());
  }
  std::sort(sizes.begin(), sizes.end());
  if (sizes != minimum_basis_lengths(m.num_atoms(), edges)) return "ring sizes differ from a minimum cycle basis";
  if (gf2_rank(info.ring_bonds, m.num_bonds()) != info.num_rings()) return "rings are not independent";

  const auto cycles = all_simple_cycles(m.num_atoms(), edges);
  for (std::uint32_t b = 0; b < m.num_bonds(); ++b) {
    const bool cyclic = std::any_of(cycles.begin(), cycles.end(),
                                    [&](const auto& c) { return std::find(c.begin(), c.end(), b) != c.end(); });
    if (info.bond_in_ring[b] != cyclic) return "bond_in_ring wrong for bond " + std::to_string(b);
  }
  for (std::uint32_t a = 0; a < m.num_atoms(); ++a) {
    std::optional<std::uint32_t> smallest;
    for (const auto& c : cycles) {
      const bool touches =
          std::any_of(c.begin(), c.end(), [&](auto b) { return m.bond(b).begin == a || m.bond(b).end == a; });
      if (touches && (!smallest || c.size() < *smallest)) smallest = static_cast<std::uint32_t>(c.size());
    }
    if (info.atom_in_ring[a] != smallest.has_value()) return "atom_in_ring wrong for atom " + std::to_string(a);
    if (info.smallest_ring_size[a] != smallest) return "smallest_ring_size wrong for atom " + std::to_string(a);
  }
  return std::nullopt;
}

/// SMARTS patterns of at most four query atoms used for oracle comparison.
inline const std::vector<std::string>& smarts_grid_patterns() {
  static const std::vector<std::string> patterns = {
      "C",       "c",       "[#8]",    "*",         "[R]",       "[!R]",     "[r6]",           "[r5,r3]",
      "[D1]",    "[D3]",    "[H1]",    "[X4]",      "[+]",       "[-]",      "[a]",            "[A]",
      "[C,N;R]", "[C,N&R]", "[!C;!N]", "[OX2H]",    "[N;H2,H3]", "[CX3]=O",  "C=C",            "C#N",
      "c:c",     "C~O",     "C@C",     "C-C",       "cc",        "C(=O)O",   "[#6]~[#7]",      "*-*-*",
      "C1CC1",   "c1cc1",   "[R2]",    "[R1]",      "[Cl,Br,I]", "N-C=O",    "[#6]@[#6]@[#6]", "C~*~*~C",
      "[D2]-[D2]", "O=*",   "[C;!R]-[C;!R]",
  };
  return patterns;
}

// ---------------------------------------------------------------------------
// SMARTS: every injective assignment of query atoms to target atoms.

inline std::set<std::vector<std::uint32_t>> brute_force_matches(const SmartsPattern& p, const Molecule& m) {
  std::set<std::vector<std::uint32_t>> out;
  const auto nq = p.num_atoms(), nt = m.num_atoms();
  std::vector<std::uint32_t> assign(nq, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t q) {
    if (q == nq) {
      std::set<std::uint32_t> distinct(assign.begin(), assign.end());
      if (distinct.size() != nq) return;
      for (std::uint32_t i = 0; i < nq; ++i) {
        if (!p.atom_matches(i, m, assign[i])) return;
      }
      for (std::uint32_t b = 0; b < p.num_bonds(); ++b) {
        const auto& qb = p.bond(b);
        const auto tb = m.bond_between(assign[qb.begin], assign[qb.end]);
        if (!tb || !p.bond_matches(b, m, *tb)) return;
      }
      out.insert(assign);
      return;
    }
    for (std::uint32_t t = 0; t < nt; ++t) {
      assign[q] = t;
      rec(q + 1);
    }
  };
  if (nq > 0) rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// Feature enumeration counts for the hashed families.

/// All-pairs shortest paths over heavy atoms by Floyd-Warshall; -1 when
/// unreachable.
inline std::vector<std::vector<int>> heavy_distances(const Molecule& m) {
  const auto n = m.num_atoms();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& b : m.bonds()) {
    if (m.is_hydrogen(b.begin) || m.is_hydrogen(b.end)) continue;
    d[b.begin][b.end] = d[b.end][b.begin] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = -1;
  return d;
}

/// Circular environments surviving dedup: every heavy atom at radius 0 plus
/// each distinct non-empty bond set {bonds with an endpoint within r - 1 of
/// the center}, r = 1..radius.
inline std::size_t ecfp_feature_count(const Molecule& m, std::uint32_t radius) {
  const auto d = heavy_distances(m);
  std::size_t count = 0;
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint32_t r = 0; r <= radius; ++r) {
    for (std::size_t c = 0; c < m.num_atoms(); ++c) {
      if (m.is_hydrogen(c)) continue;
      if (r == 0) {
        ++count;
        continue;
      }
      std::vector<std::uint32_t> bonds;
      for (std::uint32_t b = 0; b < m.num_bonds(); ++b) {
        const auto& bond = m.bond(b);
        if (m.is_hydrogen(bond.begin) || m.is_hydrogen(bond.end)) continue;
        const int near = std::max(d[c][bond.begin] >= 0 && d[c][bond.begin] <= static_cast<int>(r) - 1 ? 1 : 0,
                                  d[c][bond.end] >= 0 && d[c][bond.end] <= static_cast<int>(r) - 1 ? 1 : 0);
        if (near) bonds.push_back(b);
      }
      if (!bonds.empty() && seen.insert(bonds).second) ++count;
    }
  }
  return count;
}

inline std::size_t atom_pair_count(const Molecule& m, std::uint32_t cap) {
  const auto d = heavy_distances(m);
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.num_atoms(); ++i)
    for (std::size_t j = i + 1; j < m.num_atoms(); ++j)
      if (!m.is_hydrogen(i) && !m.is_hydrogen(j) && d[i][j] >= 1 && d[i][j] <= static_cast<int>(cap)) ++count;
  return count;
}

/// Undirected simple paths over heavy atoms with `bonds` bonds, by
/// enumerating ordered atom tuples and halving.
inline std::size_t simple_path_count(const Molecule& m, std::size_t bonds) {
  const auto n = m.num_atoms();
  std::size_t directed = 0;
  std::vector<std::uint32_t> path;
  std::function<void()> rec = [&] {
    if (path.size() == bonds + 1) {
      ++directed;
      return;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      if (m.is_hydrogen(v) || std::find(path.begin(), path.end(), v) != path.end()) continue;
      if (!path.empty() && !m.bond_between(path.back(), v)) continue;
      path.push_back(v);
      rec();
      path.pop_back();
    }
  };
  rec();
  return directed / 2;
}

// ---------------------------------------------------------------------------
// Similarity: full scan with an explicit sort.

inline std::vector<SimilarityHit> full_scan_top_k(const std::vector<FingerprintVector>& rows,
                                                  const FingerprintVector& query, std::size_t k, Metric metric) {
  std::vector<SimilarityHit> all;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::set<std::uint32_t> a, b;
    for (const auto& e : query.entries()) a.insert(e.first);
    for (const auto& e : rows[r].entries()) b.insert(e.first);
    std::size_t both = 0;
    for (auto x : a) both += b.count(x);
    std::set<std::uint32_t> either = a;
    either.insert(b.begin(), b.end());
    double s = 0.0;
    if (!either.empty()) {
      s = metric == Metric::Tanimoto ? static_cast<double>(both) / static_cast<double>(either.size())
                                     : 2.0 * static_cast<double>(both) / static_cast<double>(a.size() + b.size());
    }
    all.push_back({r, s});
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.score > y.score; });
  all.resize(std::min(k, all.size()));
  return all;
}

}  // namespace molfp::testing

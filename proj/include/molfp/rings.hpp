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
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

namespace molfp {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Ring perception result. `rings` is a minimum cycle basis; each ring lists
/// its atoms in cycle order starting from the smallest index, walking toward
/// the smaller of that atom's two ring neighbors.
struct RingInfo {
  std::vector<std::vector<std::uint32_t>> rings;
  std::vector<std::vector<std::uint32_t>> ring_bonds;  // bond indices, parallel to `rings`
  std::vector<bool> atom_in_ring;
  std::vector<bool> bond_in_ring;
  std::vector<std::uint32_t> atom_ring_count;
  std::vector<std::optional<std::uint32_t>> smallest_ring_size;

  std::size_t num_rings() const noexcept { return rings.size(); }
};

namespace detail {

struct Adjacency {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> nbrs;  // (atom, bond)

  Adjacency(std::size_t n, std::span<const Edge> edges) : nbrs(n) {
    for (std::uint32_t b = 0; b < edges.size(); ++b) {
      nbrs[edges[b].first].emplace_back(edges[b].second, b);
      nbrs[edges[b].second].emplace_back(edges[b].first, b);
    }
    for (auto& list : nbrs) std::sort(list.begin(), list.end());
  }
};

inline std::size_t count_components(std::size_t n, const Adjacency& adj) {
  std::vector<bool> seen(n, false);
  std::size_t components = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto [w, b] : adj.nbrs[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

class BitRow {
 public:
  explicit BitRow(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void flip(std::size_t i) { words_[i / 64] ^= (std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }
  std::size_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
    }
    return std::numeric_limits<std::size_t>::max();
  }
  BitRow& operator^=(const BitRow& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

 private:
  std::vector<std::uint64_t> words_;
};

/// Incremental GF(2) independence test over edge-incidence vectors.
class CycleSpaceBasis {
 public:
  explicit CycleSpaceBasis(std::size_t num_edges) : num_edges_(num_edges) {}

  /// Adds the cycle if it is independent of those accepted so far.
  bool try_add(std::span<const std::uint32_t> bonds) {
    BitRow row(num_edges_);
    for (auto b : bonds) row.flip(b);
    for (const auto& [pivot, basis_row] : rows_) {
      if (row.test(pivot)) row ^= basis_row;
    }
    if (row.none()) return false;
    rows_.emplace_back(row.lowest(), std::move(row));
    return true;
  }

 private:
  std::size_t num_edges_;
  std::vector<std::pair<std::size_t, BitRow>> rows_;
};

struct CandidateCycle {
  std::vector<std::uint32_t> atoms;   // cycle order
  std::vector<std::uint32_t> bonds;   // sorted
  std::vector<std::uint32_t> sorted;  // sorted atoms, tie-break key
};

/// Rotates/reflects a cycle to start at its smallest atom and continue toward
/// the smaller neighbor.
inline std::vector<std::uint32_t> normalize_cycle(std::vector<std::uint32_t> cycle) {
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  if (cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

inline bool candidate_less(const CandidateCycle& a, const CandidateCycle& b) {
  if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
  if (a.sorted != b.sorted) return a.sorted < b.sorted;
  return a.bonds < b.bonds;
}

}  // namespace detail

/// Minimum cycle basis of an undirected simple graph.
///
/// Candidates form a Horton set: for every root atom r and every bond (u, v),
/// the closed walk path(r, u) + (u, v) + path(v, r) over the BFS tree of r is
/// kept when the two tree paths meet only at r. Candidates are taken greedily
/// in (size, sorted atom tuple, bond tuple) order and accepted when
/// independent over GF(2), which yields a minimum cycle basis.
inline RingInfo perceive_rings(std::size_t num_atoms, std::span<const Edge> edges) {
  using detail::CandidateCycle;
  RingInfo info;
  info.atom_in_ring.assign(num_atoms, false);
  info.bond_in_ring.assign(edges.size(), false);
  info.atom_ring_count.assign(num_atoms, 0);
  info.smallest_ring_size.assign(num_atoms, std::nullopt);

  detail::Adjacency adj(num_atoms, edges);
  const std::size_t components = detail::count_components(num_atoms, adj);
  const std::size_t cyclomatic = edges.size() + components - num_atoms;
  if (cyclomatic == 0) return info;

  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<CandidateCycle> candidates;
  std::vector<std::uint32_t> parent(num_atoms), parent_bond(num_atoms), depth(num_atoms);
  for (std::uint32_t root = 0; root < num_atoms; ++root) {
    if (adj.nbrs[root].size() < 2) continue;
    std::fill(depth.begin(), depth.end(), kUnseen);
    depth[root] = 0;
    parent[root] = root;
    std::queue<std::uint32_t> queue;
    queue.push(root);
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop();
      for (auto [w, b] : adj.nbrs[v]) {
        if (depth[w] == kUnseen) {
          depth[w] = depth[v] + 1;
          parent[w] = v;
          parent_bond[w] = b;
          queue.push(w);
        }
      }
    }
    auto path_to_root = [&](std::uint32_t v) {
      std::vector<std::uint32_t> path{v};
      while (v != root) {
        v = parent[v];
        path.push_back(v);
      }
      return path;
    };
    for (std::uint32_t b = 0; b < edges.size(); ++b) {
      auto [u, v] = edges[b];
      if (depth[u] == kUnseen || depth[v] == kUnseen) continue;
      if (parent[u] == v && parent_bond[u] == b) continue;
      if (parent[v] == u && parent_bond[v] == b) continue;
      auto pu = path_to_root(u);
      auto pv = path_to_root(v);
      // Paths may share only the root.
      std::vector<std::uint32_t> a(pu.begin(), pu.end() - 1), c(pv.begin(), pv.end() - 1);
      std::sort(a.begin(), a.end());
      std::sort(c.begin(), c.end());
      std::vector<std::uint32_t> common;
      std::set_intersection(a.begin(), a.end(), c.begin(), c.end(), std::back_inserter(common));
      if (!common.empty()) continue;

      CandidateCycle cand;
      // root ... u  then v ... (back to root, excluded)
      cand.atoms.assign(pu.rbegin(), pu.rend());
      cand.atoms.insert(cand.atoms.end(), pv.begin(), pv.end() - 1);
      for (std::size_t i = 0; i + 1 < pu.size(); ++i) cand.bonds.push_back(parent_bond[pu[i]]);
      for (std::size_t i = 0; i + 1 < pv.size(); ++i) cand.bonds.push_back(parent_bond[pv[i]]);
      cand.bonds.push_back(b);
      if (cand.atoms.size() < 3) continue;
      std::sort(cand.bonds.begin(), cand.bonds.end());
      cand.sorted = cand.atoms;
      std::sort(cand.sorted.begin(), cand.sorted.end());
      cand.atoms = detail::normalize_cycle(std::move(cand.atoms));
      candidates.push_back(std::move(cand));
    }
  }

  std::sort(candidates.begin(), candidates.end(), detail::candidate_less);
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](const auto& x, const auto& y) { return x.bonds == y.bonds; }),
                   candidates.end());

  detail::CycleSpaceBasis basis(edges.size());
  for (auto& cand : candidates) {
    if (info.rings.size() == cyclomatic) break;
    if (!basis.try_add(cand.bonds)) continue;
    info.rings.push_back(std::move(cand.atoms));
    info.ring_bonds.push_back(std::move(cand.bonds));
  }

  for (std::size_t r = 0; r < info.rings.size(); ++r) {
    const auto size = static_cast<std::uint32_t>(info.rings[r].size());
    for (auto a : info.rings[r]) {
      info.atom_in_ring[a] = true;
      ++info.atom_ring_count[a];
      auto& smallest = info.smallest_ring_size[a];
      if (!smallest || size < *smallest) smallest = size;
    }
    for (auto b : info.ring_bonds[r]) info.bond_in_ring[b] = true;
  }
  return info;
}

}  // namespace molfp

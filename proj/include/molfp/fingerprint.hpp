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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "molfp/error.hpp"

namespace molfp {

enum class Variant { Binary, Count };

enum class Family {
  Ecfp,
  Fcfp,
  AtomPair,
  TopologicalTorsion,
  Path,
  Substructure,
  Descriptors,
};

constexpr std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::Ecfp: return "ecfp";
    case Family::Fcfp: return "fcfp";
    case Family::AtomPair: return "atom_pair";
    case Family::TopologicalTorsion: return "topological_torsion";
    case Family::Path: return "path";
    case Family::Substructure: return "substructure";
    case Family::Descriptors: return "descriptors";
  }
  return "?";
}

inline std::optional<Family> family_from_name(std::string_view name) {
  for (auto f : {Family::Ecfp, Family::Fcfp, Family::AtomPair, Family::TopologicalTorsion,
                 Family::Path, Family::Substructure, Family::Descriptors}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

struct FingerprintConfig {
  Family family = Family::Ecfp;
  std::uint32_t length = 2048;
  std::uint32_t radius = 2;
  std::uint32_t min_path = 1;
  std::uint32_t max_path = 7;
  std::uint32_t distance_cap = 30;
  std::string key_set_path;  // empty: built-in key set
  Variant variant = Variant::Binary;

  bool hashed() const noexcept {
    return family != Family::Substructure && family != Family::Descriptors;
  }

  /// Throws Error(Config) on parameters outside their documented ranges.
  void validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::Config, what); };
    if (hashed() && length == 0) fail("length must be positive");
    if (family == Family::Path) {
      if (min_path < 1 || min_path > 10 || max_path < 1 || max_path > 10)
        fail("path lengths must lie in 1..10");
      if (min_path > max_path) fail("min_path must not exceed max_path");
    }
    if (family == Family::AtomPair && (distance_cap < 1 || distance_cap > 30))
      fail("distance_cap must lie in 1..30");
  }
};

/// Sparse fingerprint: sorted (index, count) pairs with index < length and
/// count >= 1. Binary vectors store count 1 everywhere.
class FingerprintVector {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  FingerprintVector(std::uint32_t length, Variant variant) : length_(length), variant_(variant) {
    if (length == 0) throw Error(ErrorKind::Shape, "fingerprint length must be positive");
  }

  /// Builds from unsorted feature indices (each occurrence counts once).
  static FingerprintVector from_features(std::uint32_t length, Variant variant,
                                         std::vector<std::uint32_t> features) {
    FingerprintVector v(length, variant);
    std::sort(features.begin(), features.end());
    for (std::size_t i = 0; i < features.size();) {
      std::size_t j = i;
      while (j < features.size() && features[j] == features[i]) ++j;
      if (features[i] >= length) throw Error(ErrorKind::Shape, "feature index out of range");
      v.entries_.emplace_back(features[i],
                              variant == Variant::Binary ? 1u : static_cast<std::uint32_t>(j - i));
      i = j;
    }
    return v;
  }

  /// Builds from (index, count) pairs; zero counts are dropped.
  static FingerprintVector from_entries(std::uint32_t length, Variant variant,
                                        std::vector<Entry> entries) {
    FingerprintVector v(length, variant);
    std::sort(entries.begin(), entries.end());
    for (const auto& [index, count] : entries) {
      if (index >= length) throw Error(ErrorKind::Shape, "feature index out of range");
      if (count == 0) continue;
      if (!v.entries_.empty() && v.entries_.back().first == index) {
        v.entries_.back().second += count;
      } else {
        v.entries_.emplace_back(index, count);
      }
    }
    if (variant == Variant::Binary) {
      for (auto& e : v.entries_) e.second = 1;
    }
    return v;
  }

  std::uint32_t length() const noexcept { return length_; }
  Variant variant() const noexcept { return variant_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  std::uint32_t at(std::uint32_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{index, 0});
    return it != entries_.end() && it->first == index ? it->second : 0;
  }

  std::uint64_t total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& e : entries_) sum += e.second;
    return sum;
  }

  std::vector<std::uint32_t> dense() const {
    std::vector<std::uint32_t> out(length_, 0);
    for (const auto& [i, c] : entries_) out[i] = c;
    return out;
  }

  friend bool operator==(const FingerprintVector&, const FingerprintVector&) = default;

 private:
  std::uint32_t length_;
  Variant variant_;
  std::vector<Entry> entries_;
};

inline FingerprintVector binarize(const FingerprintVector& v) {
  return FingerprintVector::from_entries(v.length(), Variant::Binary, v.entries());
}

/// Folds to `target` positions: entry j collects positions j, j + target, ...
/// by OR (binary) or sum (count).
inline FingerprintVector fold(const FingerprintVector& v, std::uint32_t target) {
  if (target == 0 || v.length() % target != 0)
    throw Error(ErrorKind::Fold, "fold target " + std::to_string(target) +
                                     " does not divide length " + std::to_string(v.length()));
  std::vector<FingerprintVector::Entry> folded;
  folded.reserve(v.nnz());
  for (const auto& [i, c] : v.entries()) folded.emplace_back(i % target, c);
  return FingerprintVector::from_entries(target, v.variant(), std::move(folded));
}

}  // namespace molfp

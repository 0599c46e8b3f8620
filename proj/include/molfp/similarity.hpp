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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "molfp/error.hpp"
#include "molfp/fingerprint.hpp"
#include "molfp/matrix.hpp"

namespace molfp {

enum class Metric { Tanimoto, Dice };

inline std::optional<Metric> metric_from_name(std::string_view name) {
  if (name == "tanimoto") return Metric::Tanimoto;
  if (name == "dice") return Metric::Dice;
  return std::nullopt;
}

namespace detail {

/// Size of the intersection of two sorted index lists.
inline std::size_t common_count(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

/// Both-empty pairs score 0.
inline double score(Metric metric, std::size_t common, std::size_t na, std::size_t nb) {
  if (na + nb == 0) return 0.0;
  if (metric == Metric::Tanimoto) return static_cast<double>(common) / static_cast<double>(na + nb - common);
  return 2.0 * static_cast<double>(common) / static_cast<double>(na + nb);
}

inline std::vector<std::uint32_t> support(const FingerprintVector& v) {
  std::vector<std::uint32_t> out;
  out.reserve(v.nnz());
  for (const auto& e : v.entries()) out.push_back(e.first);
  return out;
}

}  // namespace detail

/// Similarity of the supports of `a` and `b`; counts are binarized first.
inline double similarity(const FingerprintVector& a, const FingerprintVector& b, Metric metric) {
  if (a.length() != b.length()) throw Error(ErrorKind::Shape, "fingerprint lengths differ");
  const auto sa = detail::support(a), sb = detail::support(b);
  return detail::score(metric, detail::common_count(sa, sb), sa.size(), sb.size());
}

inline double tanimoto(const FingerprintVector& a, const FingerprintVector& b) {
  return similarity(a, b, Metric::Tanimoto);
}

inline double dice(const FingerprintVector& a, const FingerprintVector& b) {
  return similarity(a, b, Metric::Dice);
}

struct SimilarityHit {
  std::size_t row;
  double score;

  friend bool operator==(const SimilarityHit&, const SimilarityHit&) = default;
};

/// Exact top-k over every database row: score descending, then row
/// ascending. Stored values are treated as presence bits.
template <class T>
std::vector<SimilarityHit> bulk_top_k(const FingerprintVector& query, const CsrMatrix<T>& db, std::size_t k,
                                      Metric metric = Metric::Tanimoto) {
  if (query.length() != db.cols()) throw Error(ErrorKind::Shape, "query length != database columns");
  if (k == 0) throw Error(ErrorKind::Shape, "k must be positive");
  const auto q = detail::support(query);
  std::vector<SimilarityHit> hits;
  hits.reserve(db.rows());
  for (std::size_t r = 0; r < db.rows(); ++r) {
    const auto row = db.row_indices(r);
    hits.push_back({r, detail::score(metric, detail::common_count(q, row), q.size(), row.size())});
  }
  const auto order = [](const SimilarityHit& x, const SimilarityHit& y) {
    return x.score != y.score ? x.score > y.score : x.row < y.row;
  };
  const std::size_t keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(), order);
  hits.resize(keep);
  return hits;
}

}  // namespace molfp

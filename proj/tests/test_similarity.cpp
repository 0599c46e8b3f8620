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

#include "support.hpp"

using namespace molfp;

namespace {

FingerprintVector bits(std::uint32_t length, std::vector<std::uint32_t> on) {
  return FingerprintVector::from_features(length, Variant::Binary, std::move(on));
}

FingerprintVector random_bits(std::uint32_t length, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<std::uint32_t> on;
  for (std::uint32_t i = 0; i < length; ++i) {
    if (coin(rng)) on.push_back(i);
  }
  return bits(length, on);
}

CsrMatrix<std::uint8_t> stack(const std::vector<FingerprintVector>& rows) {
  return std::get<CsrMatrix<std::uint8_t>>(from_rows(rows, rows.front().length(), Variant::Binary, OutputForm::Sparse));
}

}  // namespace

TEST(Tanimoto, Examples) {
  const auto v = bits(8, {1, 4, 6});
  EXPECT_EQ(tanimoto(v, v), 1.0);
  EXPECT_EQ(tanimoto(bits(8, {0, 1}), bits(8, {2, 3})), 0.0);
  EXPECT_DOUBLE_EQ(tanimoto(bits(8, {0, 1}), bits(8, {1, 2})), 1.0 / 3.0);
  EXPECT_EQ(tanimoto(bits(8, {}), bits(8, {})), 0.0);
  EXPECT_THROW(tanimoto(bits(8, {1}), bits(16, {1})), Error);
}

TEST(Dice, Examples) {
  const auto v = bits(8, {1, 4, 6});
  EXPECT_EQ(dice(v, v), 1.0);
  EXPECT_DOUBLE_EQ(dice(bits(8, {0, 1}), bits(8, {1, 2})), 0.5);
  EXPECT_EQ(dice(bits(8, {}), bits(8, {})), 0.0);
  EXPECT_THROW(dice(bits(8, {1}), bits(4, {1})), Error);
}

TEST(Metrics, DiceDominatesTanimoto) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_bits(256, 0.1, rng), b = random_bits(256, 0.1, rng);
    const double tn = tanimoto(a, b), d = dice(a, b);
    EXPECT_GE(d, tn);
    EXPECT_NEAR(d, 2.0 * tn / (1.0 + tn), 1e-12);
    EXPECT_EQ(tn, tanimoto(b, a));
    EXPECT_EQ(d, dice(b, a));
    EXPECT_GE(tn, 0.0);
    EXPECT_LE(d, 1.0);
  }
}

TEST(Metrics, CountsAreBinarized) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<FingerprintVector::Entry> entries;
    for (std::uint32_t i = 0; i < 64; ++i) {
      if (rng() % 5 == 0) entries.emplace_back(i, 1 + static_cast<std::uint32_t>(rng() % 9));
    }
    const auto c = FingerprintVector::from_entries(64, Variant::Count, entries);
    const auto w = random_bits(64, 0.2, rng);
    EXPECT_EQ(tanimoto(c, w), tanimoto(binarize(c), w));
    EXPECT_EQ(dice(c, w), dice(binarize(c), w));
  }
}

TEST(Metrics, Names) {
  EXPECT_EQ(metric_from_name("tanimoto"), Metric::Tanimoto);
  EXPECT_EQ(metric_from_name("dice"), Metric::Dice);
  EXPECT_FALSE(metric_from_name("cosine"));
}

TEST(TopK, Examples) {
  const std::vector<FingerprintVector> rows{bits(16, {1, 2}), bits(16, {3, 4, 5}), bits(16, {1, 2, 3})};
  const auto db = stack(rows);
  const auto hits = bulk_top_k(rows[1], db, 1);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].row, 1u);
  EXPECT_EQ(hits[0].score, 1.0);
  EXPECT_EQ(bulk_top_k(rows[0], db, 10).size(), 3u);
  EXPECT_THROW(bulk_top_k(bits(8, {1}), db, 1), Error);
  EXPECT_THROW(bulk_top_k(rows[0], db, 0), Error);
}

TEST(TopK, TiesBreakByRow) {
  const std::vector<FingerprintVector> rows{bits(8, {0}), bits(8, {1}), bits(8, {0}), bits(8, {0})};
  const auto hits = bulk_top_k(bits(8, {0}), stack(rows), 4);
  EXPECT_EQ(hits, (std::vector<SimilarityHit>{{0, 1.0}, {2, 1.0}, {3, 1.0}, {1, 0.0}}));
}

TEST(TopK, MatchesFullScanOracle) {
  std::mt19937_64 rng(77);
  std::vector<FingerprintVector> rows;
  for (int r = 0; r < 500; ++r) rows.push_back(random_bits(512, 0.02 + 0.01 * (r % 4), rng));
  const auto db = stack(rows);
  for (int q = 0; q < 20; ++q) {
    const auto query = q % 2 ? rows[static_cast<std::size_t>(q) * 7] : random_bits(512, 0.03, rng);
    for (auto metric : {Metric::Tanimoto, Metric::Dice}) {
      for (std::size_t k : {1u, 5u, 50u, 500u, 900u}) {
        EXPECT_EQ(bulk_top_k(query, db, k, metric), molfp::testing::full_scan_top_k(rows, query, k, metric));
      }
    }
  }
}

TEST(TopK, FullRankingConsistentWithPairwiseScores) {
  std::mt19937_64 rng(31);
  std::vector<FingerprintVector> rows;
  for (int r = 0; r < 120; ++r) rows.push_back(random_bits(128, 0.05, rng));
  const auto db = stack(rows);
  const auto query = random_bits(128, 0.05, rng);
  const auto hits = bulk_top_k(query, db, rows.size());
  ASSERT_EQ(hits.size(), rows.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    EXPECT_EQ(hits[i].score, tanimoto(query, rows[hits[i].row]));
    if (i > 0) {
      EXPECT_GE(hits[i - 1].score, hits[i].score);
      if (hits[i - 1].score == hits[i].score) EXPECT_LT(hits[i - 1].row, hits[i].row);
    }
  }
}

TEST(TopK, RealFingerprints) {
  FingerprintConfig cfg;
  std::vector<FingerprintVector> rows;
  for (const auto& s : molfp::testing::corpus_smiles()) rows.push_back(ecfp(parse_molecule(s), cfg));
  const auto db = stack(rows);
  for (std::size_t q = 0; q < rows.size(); q += 13) {
    const auto hits = bulk_top_k(rows[q], db, 3);
    EXPECT_EQ(hits[0].score, 1.0);
    EXPECT_EQ(hits, molfp::testing::full_scan_top_k(rows, rows[q], 3, Metric::Tanimoto));
  }
}

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
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "molfp/circular.hpp"
#include "molfp/descriptors.hpp"
#include "molfp/error.hpp"
#include "molfp/fingerprint.hpp"
#include "molfp/key_set.hpp"
#include "molfp/matrix.hpp"
#include "molfp/molecule.hpp"
#include "molfp/smiles.hpp"
#include "molfp/substructure.hpp"
#include "molfp/topological.hpp"

namespace molfp {

/// What a transformer stage consumes or produces.
enum class DataKind { Text, Molecule, Vector };

constexpr std::string_view data_kind_name(DataKind k) noexcept {
  switch (k) {
    case DataKind::Text: return "text";
    case DataKind::Molecule: return "molecule";
    case DataKind::Vector: return "vector";
  }
  return "?";
}

using Value = std::variant<std::string, Molecule, SparseRow>;

/// Computes one fingerprint family as a sparse row. `keys` is only read by
/// the substructure family.
inline SparseRow compute_features(const Molecule& mol, const FingerprintConfig& cfg, const KeySet& keys) {
  switch (cfg.family) {
    case Family::Ecfp: return to_sparse_row(ecfp(mol, cfg));
    case Family::Fcfp: return to_sparse_row(fcfp(mol, cfg));
    case Family::AtomPair: return to_sparse_row(atom_pair(mol, cfg));
    case Family::TopologicalTorsion: return to_sparse_row(topological_torsion(mol, cfg));
    case Family::Path: return to_sparse_row(path_fingerprint(mol, cfg));
    case Family::Substructure: return to_sparse_row(substructure_fingerprint(mol, keys, cfg.variant));
    case Family::Descriptors: {
      SparseRow row;
      const auto values = descriptors(mol);
      for (std::uint32_t i = 0; i < values.size(); ++i) {
        if (values[i] != 0.0) {
          row.indices.push_back(i);
          row.values.push_back(values[i]);
        }
      }
      return row;
    }
  }
  throw Error(ErrorKind::Config, "unknown fingerprint family");
}

/// Stateless transformer: a parser, a fingerprint, a fold, or a pipeline /
/// union of other transformers. Cheap to copy (nodes are shared and
/// immutable).
class Transformer {
 public:
  /// Text -> Molecule (parse + sanitize).
  static Transformer parser() { return Transformer(std::make_shared<const Node>(Node{ParserNode{}})); }

  /// Molecule -> Vector. Validates the config and loads the key set now, so
  /// a bad key file fails here rather than mid-batch.
  static Transformer fingerprint(FingerprintConfig cfg) {
    cfg.validate();
    std::shared_ptr<const KeySet> keys;
    if (cfg.family == Family::Substructure) {
      if (cfg.key_set_path.empty()) {
        keys = std::shared_ptr<const KeySet>(&default_key_set(), [](const KeySet*) {});
      } else {
        keys = std::make_shared<const KeySet>(load_key_set(cfg.key_set_path));
      }
      if (keys->empty()) throw Error(ErrorKind::Config, "substructure fingerprint needs a non-empty key set");
    }
    return Transformer(std::make_shared<const Node>(Node{FingerprintNode{std::move(cfg), std::move(keys)}}));
  }

  /// Vector -> Vector folded to `target` columns.
  static Transformer folder(std::uint32_t target) {
    if (target == 0) throw Error(ErrorKind::Fold, "fold target must be positive");
    return Transformer(std::make_shared<const Node>(Node{FoldNode{target}}));
  }

  /// Functional composition, applied left to right.
  static Transformer pipeline(std::vector<Transformer> stages) {
    if (stages.empty()) throw Error(ErrorKind::Composition, "pipeline needs at least one stage");
    for (std::size_t i = 1; i < stages.size(); ++i) {
      const auto out = stages[i - 1].output_kind();
      const auto in = stages[i].input_kind();
      if (out != in) {
        throw Error(ErrorKind::Composition, "stage " + std::to_string(i) + " consumes " +
                                                std::string(data_kind_name(in)) + " but receives " +
                                                std::string(data_kind_name(out)));
      }
      if (const auto* f = std::get_if<FoldNode>(&stages[i].node_->body)) {
        if (stages[i - 1].width() % f->target != 0)
          throw Error(ErrorKind::Fold, "fold target " + std::to_string(f->target) + " does not divide width " +
                                           std::to_string(stages[i - 1].width()));
      }
    }
    return Transformer(std::make_shared<const Node>(Node{PipelineNode{std::move(stages)}}));
  }

  /// Horizontal concatenation of vector-producing branches that share an
  /// input kind, in declaration order.
  static Transformer feature_union(std::vector<Transformer> branches) {
    if (branches.empty()) throw Error(ErrorKind::Composition, "union needs at least one branch");
    for (const auto& b : branches) {
      if (b.input_kind() != branches.front().input_kind())
        throw Error(ErrorKind::Composition, "union branches consume different input kinds");
      if (b.output_kind() != DataKind::Vector)
        throw Error(ErrorKind::Composition, "union branches must produce vectors");
    }
    return Transformer(std::make_shared<const Node>(Node{UnionNode{std::move(branches)}}));
  }

  DataKind input_kind() const {
    return std::visit(
        [](const auto& n) -> DataKind {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ParserNode>) return DataKind::Text;
          else if constexpr (std::is_same_v<N, FingerprintNode>) return DataKind::Molecule;
          else if constexpr (std::is_same_v<N, FoldNode>) return DataKind::Vector;
          else if constexpr (std::is_same_v<N, PipelineNode>) return n.stages.front().input_kind();
          else return n.branches.front().input_kind();
        },
        node_->body);
  }

  DataKind output_kind() const {
    return std::visit(
        [](const auto& n) -> DataKind {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ParserNode>) return DataKind::Molecule;
          else if constexpr (std::is_same_v<N, PipelineNode>) return n.stages.back().output_kind();
          else return DataKind::Vector;
        },
        node_->body);
  }

  /// Output columns of a vector-producing transformer (0 otherwise).
  std::size_t width() const {
    return std::visit(
        [](const auto& n) -> std::size_t {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ParserNode>) return 0;
          else if constexpr (std::is_same_v<N, FingerprintNode>) {
            if (n.cfg.family == Family::Substructure) return n.keys->size();
            if (n.cfg.family == Family::Descriptors) return kNumDescriptors;
            return n.cfg.length;
          } else if constexpr (std::is_same_v<N, FoldNode>) return n.target;
          else if constexpr (std::is_same_v<N, PipelineNode>) return n.stages.back().width();
          else {
            std::size_t total = 0;
            for (const auto& b : n.branches) total += b.width();
            return total;
          }
        },
        node_->body);
  }

  /// Element kind of the assembled matrix: u8 for binary, u32 for counts,
  /// f64 for descriptors; unions take the widest of their branches.
  DType dtype() const {
    return std::visit(
        [](const auto& n) -> DType {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, FingerprintNode>) {
            if (n.cfg.family == Family::Descriptors) return DType::F64;
            return n.cfg.variant == Variant::Binary ? DType::U8 : DType::U32;
          } else if constexpr (std::is_same_v<N, PipelineNode>) {
            // A trailing fold keeps the element kind of what it folds.
            for (auto it = n.stages.rbegin(); it != n.stages.rend(); ++it) {
              if (!std::holds_alternative<FoldNode>(it->node_->body)) return it->dtype();
            }
            return DType::U32;
          } else if constexpr (std::is_same_v<N, UnionNode>) {
            DType t = DType::U8;
            for (const auto& b : n.branches) t = promote(t, b.dtype());
            return t;
          } else {
            return DType::U32;
          }
        },
        node_->body);
  }

  Value apply(const Value& input) const { return apply_node(input, DType::U32); }

  /// Text or molecule in, sparse row out. Text is parsed first when the
  /// transformer starts at molecules.
  SparseRow transform_text(std::string_view smiles) const {
    if (input_kind() == DataKind::Text) return expect_row(apply(Value{std::string(smiles)}));
    if (input_kind() == DataKind::Molecule) return expect_row(apply(Value{parse_molecule(smiles)}));
    throw Error(ErrorKind::Composition, "transformer does not consume text or molecules");
  }

  SparseRow transform_molecule(const Molecule& mol) const {
    if (input_kind() != DataKind::Molecule)
      throw Error(ErrorKind::Composition, "transformer does not consume molecules");
    return expect_row(apply(Value{mol}));
  }

 private:
  struct ParserNode {};
  struct FingerprintNode {
    FingerprintConfig cfg;
    std::shared_ptr<const KeySet> keys;
  };
  struct FoldNode {
    std::uint32_t target;
  };
  struct PipelineNode {
    std::vector<Transformer> stages;
  };
  struct UnionNode {
    std::vector<Transformer> branches;
  };
  struct Node {
    std::variant<ParserNode, FingerprintNode, FoldNode, PipelineNode, UnionNode> body;
  };

  explicit Transformer(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static SparseRow expect_row(Value v) {
    if (auto* row = std::get_if<SparseRow>(&v)) return std::move(*row);
    throw Error(ErrorKind::Composition, "transformer does not produce vectors");
  }

  static const SparseRow& as_row(const Value& v) {
    if (const auto* row = std::get_if<SparseRow>(&v)) return *row;
    throw Error(ErrorKind::Composition, "expected a vector input");
  }

  // `upstream` is the element kind of the vector feeding a fold.
  Value apply_node(const Value& input, DType upstream) const {
    return std::visit(
        [&](const auto& n) -> Value {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ParserNode>) {
            const auto* text = std::get_if<std::string>(&input);
            if (!text) throw Error(ErrorKind::Composition, "parser expects text");
            return parse_molecule(*text);
          } else if constexpr (std::is_same_v<N, FingerprintNode>) {
            const auto* mol = std::get_if<Molecule>(&input);
            if (!mol) throw Error(ErrorKind::Composition, "fingerprint expects a molecule");
            static const KeySet kNoKeys;
            return compute_features(*mol, n.cfg, n.keys ? *n.keys : kNoKeys);
          } else if constexpr (std::is_same_v<N, FoldNode>) {
            return fold_row(as_row(input), n.target, upstream == DType::U8);
          } else if constexpr (std::is_same_v<N, PipelineNode>) {
            Value current = n.stages.front().apply_node(input, upstream);
            DType kind = n.stages.front().output_kind() == DataKind::Vector ? n.stages.front().dtype() : upstream;
            for (std::size_t i = 1; i < n.stages.size(); ++i) {
              current = n.stages[i].apply_node(current, kind);
              if (!std::holds_alternative<FoldNode>(n.stages[i].node_->body) &&
                  n.stages[i].output_kind() == DataKind::Vector) {
                kind = n.stages[i].dtype();
              }
            }
            return current;
          } else {
            SparseRow out;
            std::uint32_t offset = 0;
            for (const auto& b : n.branches) {
              const auto part = as_row(b.apply_node(input, upstream));
              for (std::size_t k = 0; k < part.indices.size(); ++k) {
                out.indices.push_back(part.indices[k] + offset);
                out.values.push_back(part.values[k]);
              }
              offset += static_cast<std::uint32_t>(b.width());
            }
            return out;
          }
        },
        node_->body);
  }

  static SparseRow fold_row(const SparseRow& row, std::uint32_t target, bool binary) {
    std::vector<std::pair<std::uint32_t, double>> cells;
    cells.reserve(row.indices.size());
    for (std::size_t k = 0; k < row.indices.size(); ++k) cells.emplace_back(row.indices[k] % target, row.values[k]);
    std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow out;
    for (const auto& [i, v] : cells) {
      if (!out.indices.empty() && out.indices.back() == i) {
        out.values.back() = binary ? 1.0 : out.values.back() + v;
      } else {
        out.indices.push_back(i);
        out.values.push_back(binary ? 1.0 : v);
      }
    }
    return out;
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace molfp

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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "molfp/error.hpp"
#include "molfp/fingerprint.hpp"

namespace molfp {

enum class DType { U8, U32, F64 };
enum class OutputForm { Dense, Sparse };

constexpr std::string_view dtype_name(DType t) noexcept {
  switch (t) {
    case DType::U8: return "u8";
    case DType::U32: return "u32";
    case DType::F64: return "f64";
  }
  return "?";
}

inline std::optional<DType> dtype_from_name(std::string_view name) {
  if (name == "u8") return DType::U8;
  if (name == "u32") return DType::U32;
  if (name == "f64") return DType::F64;
  return std::nullopt;
}

template <class T>
constexpr DType dtype_of() noexcept {
  if constexpr (std::is_same_v<T, std::uint8_t>) return DType::U8;
  else if constexpr (std::is_same_v<T, std::uint32_t>) return DType::U32;
  else return DType::F64;
}

/// Widest of two element kinds (u8 < u32 < f64).
constexpr DType promote(DType a, DType b) noexcept {
  return static_cast<int>(a) > static_cast<int>(b) ? a : b;
}

/// Index width of CSR indices and row pointers in the memory accounting.
inline constexpr std::size_t kCsrIndexBytes = 4;

template <class T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(ErrorKind::Shape, "dense payload size != rows * cols");
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const T> data() const noexcept { return data_; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  T operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Compressed sparse row matrix. Every constructor validates the structure:
/// indptr has rows + 1 non-decreasing entries starting at 0, column indices
/// are strictly increasing within a row and below cols, and no zero is stored.
template <class T>
class CsrMatrix {
 public:
  using value_type = T;

  CsrMatrix() : indptr_{0} {}
  CsrMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), indptr_(rows + 1, 0) {}
  CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint32_t> indptr,
            std::vector<std::uint32_t> indices, std::vector<T> data)
      : rows_(rows), cols_(cols), indptr_(std::move(indptr)), indices_(std::move(indices)),
        data_(std::move(data)) {
    if (auto problem = structural_error()) throw Error(ErrorKind::Shape, *problem);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return indices_.size(); }
  std::span<const std::uint32_t> indptr() const noexcept { return indptr_; }
  std::span<const std::uint32_t> indices() const noexcept { return indices_; }
  std::span<const T> data() const noexcept { return data_; }

  std::span<const std::uint32_t> row_indices(std::size_t r) const {
    return std::span<const std::uint32_t>(indices_).subspan(indptr_[r], indptr_[r + 1] - indptr_[r]);
  }
  std::span<const T> row_data(std::size_t r) const {
    return std::span<const T>(data_).subspan(indptr_[r], indptr_[r + 1] - indptr_[r]);
  }

  double density() const noexcept {
    return rows_ * cols_ == 0 ? 0.0 : static_cast<double>(nnz()) / static_cast<double>(rows_ * cols_);
  }

  /// Description of the first violated invariant, if any.
  std::optional<std::string> structural_error() const {
    if (indptr_.size() != rows_ + 1) return "indptr must have rows + 1 entries";
    if (indptr_[0] != 0) return "indptr[0] must be 0";
    if (indptr_.back() != indices_.size() || indices_.size() != data_.size())
      return "indptr[rows], |indices| and |data| must agree";
    for (std::size_t r = 0; r < rows_; ++r) {
      if (indptr_[r] > indptr_[r + 1]) return "indptr must be non-decreasing";
      for (auto k = indptr_[r]; k < indptr_[r + 1]; ++k) {
        if (indices_[k] >= cols_) return "column index out of range";
        if (k > indptr_[r] && indices_[k] <= indices_[k - 1])
          return "column indices must be strictly increasing within a row";
        if (data_[k] == T{}) return "explicit zero stored";
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> indptr_;
  std::vector<std::uint32_t> indices_;
  std::vector<T> data_;
};

using AnyMatrix = std::variant<DenseMatrix<std::uint8_t>, DenseMatrix<std::uint32_t>, DenseMatrix<double>,
                               CsrMatrix<std::uint8_t>, CsrMatrix<std::uint32_t>, CsrMatrix<double>>;

template <class T>
CsrMatrix<T> to_csr(const DenseMatrix<T>& d) {
  std::vector<std::uint32_t> indptr{0}, indices;
  std::vector<T> data;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (d(r, c) != T{}) {
        indices.push_back(static_cast<std::uint32_t>(c));
        data.push_back(d(r, c));
      }
    }
    indptr.push_back(static_cast<std::uint32_t>(indices.size()));
  }
  return CsrMatrix<T>(d.rows(), d.cols(), std::move(indptr), std::move(indices), std::move(data));
}

template <class T>
DenseMatrix<T> to_dense(const CsrMatrix<T>& c) {
  DenseMatrix<T> d(c.rows(), c.cols());
  for (std::size_t r = 0; r < c.rows(); ++r) {
    auto idx = c.row_indices(r);
    auto val = c.row_data(r);
    for (std::size_t k = 0; k < idx.size(); ++k) d(r, idx[k]) = val[k];
  }
  return d;
}

template <class T>
std::size_t memory_footprint(const DenseMatrix<T>& m) noexcept {
  return m.rows() * m.cols() * sizeof(T);
}

template <class T>
std::size_t memory_footprint(const CsrMatrix<T>& m) noexcept {
  return m.nnz() * sizeof(T) + m.nnz() * kCsrIndexBytes + (m.rows() + 1) * kCsrIndexBytes;
}

inline std::size_t memory_footprint(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return memory_footprint(x); }, m);
}

inline std::size_t rows_of(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return x.rows(); }, m);
}
inline std::size_t cols_of(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return x.cols(); }, m);
}

/// One batch output row before assembly: sorted column indices and values.
struct SparseRow {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  friend bool operator==(const SparseRow&, const SparseRow&) = default;
};

inline SparseRow to_sparse_row(const FingerprintVector& v) {
  SparseRow row;
  row.indices.reserve(v.nnz());
  row.values.reserve(v.nnz());
  for (const auto& [i, c] : v.entries()) {
    row.indices.push_back(i);
    row.values.push_back(static_cast<double>(c));
  }
  return row;
}

namespace detail {

template <class T>
AnyMatrix assemble_typed(std::span<const SparseRow> rows, std::size_t cols, OutputForm form) {
  if (form == OutputForm::Dense) {
    DenseMatrix<T> m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t k = 0; k < rows[r].indices.size(); ++k) {
        m(r, rows[r].indices[k]) = static_cast<T>(rows[r].values[k]);
      }
    }
    return m;
  }
  std::vector<std::uint32_t> indptr{0}, indices;
  std::vector<T> data;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
      const auto value = static_cast<T>(row.values[k]);
      if (value == T{}) continue;
      indices.push_back(row.indices[k]);
      data.push_back(value);
    }
    indptr.push_back(static_cast<std::uint32_t>(indices.size()));
  }
  return CsrMatrix<T>(rows.size(), cols, std::move(indptr), std::move(indices), std::move(data));
}

}  // namespace detail

/// Stacks rows (in order) into a dense or CSR matrix of the given element kind.
inline AnyMatrix assemble(std::span<const SparseRow> rows, std::size_t cols, DType dtype,
                          OutputForm form) {
  for (const auto& row : rows) {
    if (row.indices.size() != row.values.size()) throw Error(ErrorKind::Shape, "ragged row");
    for (auto i : row.indices) {
      if (i >= cols) throw Error(ErrorKind::Shape, "row index exceeds column count");
    }
  }
  switch (dtype) {
    case DType::U8: return detail::assemble_typed<std::uint8_t>(rows, cols, form);
    case DType::U32: return detail::assemble_typed<std::uint32_t>(rows, cols, form);
    case DType::F64: return detail::assemble_typed<double>(rows, cols, form);
  }
  throw Error(ErrorKind::Shape, "unknown dtype");
}

/// Stacks fingerprint vectors: binary vectors become u8, count vectors u32.
/// All vectors must match `length` and `variant` (ShapeError otherwise).
inline AnyMatrix from_rows(std::span<const FingerprintVector> vectors, std::uint32_t length,
                           Variant variant, OutputForm form) {
  std::vector<SparseRow> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.length() != length) throw Error(ErrorKind::Shape, "fingerprint lengths differ");
    if (v.variant() != variant) throw Error(ErrorKind::Shape, "fingerprint variants differ");
    rows.push_back(to_sparse_row(v));
  }
  return assemble(rows, length, variant == Variant::Binary ? DType::U8 : DType::U32, form);
}

}  // namespace molfp

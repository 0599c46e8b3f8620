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

#include <charconv>
#include <cstdint>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "molfp/error.hpp"
#include "molfp/matrix.hpp"

// Text interchange formats.
//
//   CSRv1 <rows> <cols> <nnz> <dtype>
//   <indptr, space separated>
//   <indices>
//   <data>
//
//   DENSEv1 <rows> <cols> <dtype>
//   <one row per line>
//
// Every line, including the last, ends with '\n'. f64 values use the
// shortest round-trip decimal form.

namespace molfp {

namespace detail {

template <class T>
void write_value(std::ostream& os, T v) {
  if constexpr (std::is_same_v<T, double>) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, res.ptr - buf);
  } else {
    os << static_cast<std::uint64_t>(v);
  }
}

template <class T>
void write_line(std::ostream& os, std::span<const T> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ' ';
    write_value(os, values[i]);
  }
  os << '\n';
}

template <class T>
void write_matrix(std::ostream& os, const DenseMatrix<T>& m) {
  os << "DENSEv1 " << m.rows() << ' ' << m.cols() << ' ' << dtype_name(dtype_of<T>()) << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) write_line(os, m.row(r));
}

template <class T>
void write_matrix(std::ostream& os, const CsrMatrix<T>& m) {
  os << "CSRv1 " << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << ' ' << dtype_name(dtype_of<T>())
     << '\n';
  write_line(os, m.indptr());
  write_line(os, m.indices());
  write_line(os, m.data());
}

inline std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_value(std::string_view word, std::size_t line) {
  const char* first = word.data();
  const char* last = word.data() + word.size();
  if constexpr (std::is_same_v<T, double>) {
    double v = 0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
      throw FormatError(line, "bad f64 value '" + std::string(word) + "'");
    return v;
  } else {
    std::uint64_t v = 0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || v > std::numeric_limits<T>::max())
      throw FormatError(line, "bad integer '" + std::string(word) + "'");
    return static_cast<T>(v);
  }
}

/// Line-oriented cursor with 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::string text) : text_(std::move(text)) {}

  std::string_view next(const char* what) {
    ++line_;
    if (pos_ >= text_.size()) throw FormatError(line_, std::string("unexpected end of input, expected ") + what);
    auto nl = text_.find('\n', pos_);
    if (nl == std::string::npos) nl = text_.size();
    std::string_view out(text_.data() + pos_, nl - pos_);
    pos_ = nl + 1;
    if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
    return out;
  }

  std::size_t line() const noexcept { return line_; }

  void expect_end() {
    while (pos_ < text_.size()) {
      const auto rest = next("end");
      if (!rest.empty()) throw FormatError(line_, "trailing content after matrix");
    }
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

template <class T>
std::vector<T> parse_line(LineReader& in, std::size_t expected, const char* what) {
  const auto words = split_words(in.next(what));
  if (words.size() != expected)
    throw FormatError(in.line(), std::string(what) + ": expected " + std::to_string(expected) +
                                     " values, found " + std::to_string(words.size()));
  std::vector<T> out;
  out.reserve(expected);
  for (auto w : words) out.push_back(parse_value<T>(w, in.line()));
  return out;
}

template <class T>
AnyMatrix read_dense(LineReader& in, std::size_t rows, std::size_t cols) {
  std::vector<T> data;
  data.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto row = parse_line<T>(in, cols, "dense row");
    data.insert(data.end(), row.begin(), row.end());
  }
  return DenseMatrix<T>(rows, cols, std::move(data));
}

template <class T>
AnyMatrix read_csr(LineReader& in, std::size_t rows, std::size_t cols, std::size_t nnz) {
  auto indptr = parse_line<std::uint32_t>(in, rows + 1, "indptr");
  auto indices = parse_line<std::uint32_t>(in, nnz, "indices");
  const auto data_line = in.line() + 1;
  auto data = parse_line<T>(in, nnz, "data");
  try {
    return CsrMatrix<T>(rows, cols, std::move(indptr), std::move(indices), std::move(data));
  } catch (const Error& e) {
    throw FormatError(data_line, std::string("invalid CSR structure: ") + e.what());
  }
}

inline std::size_t parse_dim(std::string_view word, std::size_t line) {
  return static_cast<std::size_t>(parse_value<std::uint32_t>(word, line));
}

}  // namespace detail

inline void serialize(const AnyMatrix& m, std::ostream& os) {
  std::visit([&](const auto& x) { detail::write_matrix(os, x); }, m);
}

inline std::string serialize_to_string(const AnyMatrix& m) {
  std::ostringstream os;
  serialize(m, os);
  return os.str();
}

/// Parses CSRv1 or DENSEv1 text. Throws FormatError carrying the 1-based
/// line number of the first problem.
inline AnyMatrix deserialize_string(std::string text) {
  detail::LineReader in(std::move(text));
  const auto header = detail::split_words(in.next("header"));
  if (header.empty()) throw FormatError(1, "empty header");
  const bool csr = header[0] == "CSRv1";
  if (!csr && header[0] != "DENSEv1") throw FormatError(1, "unknown format tag '" + std::string(header[0]) + "'");
  if (header.size() != (csr ? 5u : 4u)) throw FormatError(1, "wrong number of header fields");
  const auto rows = detail::parse_dim(header[1], 1);
  const auto cols = detail::parse_dim(header[2], 1);
  const auto dtype = dtype_from_name(header.back());
  if (!dtype) throw FormatError(1, "unknown dtype '" + std::string(header.back()) + "'");

  AnyMatrix out;
  if (csr) {
    const auto nnz = detail::parse_dim(header[3], 1);
    switch (*dtype) {
      case DType::U8: out = detail::read_csr<std::uint8_t>(in, rows, cols, nnz); break;
      case DType::U32: out = detail::read_csr<std::uint32_t>(in, rows, cols, nnz); break;
      case DType::F64: out = detail::read_csr<double>(in, rows, cols, nnz); break;
    }
  } else {
    switch (*dtype) {
      case DType::U8: out = detail::read_dense<std::uint8_t>(in, rows, cols); break;
      case DType::U32: out = detail::read_dense<std::uint32_t>(in, rows, cols); break;
      case DType::F64: out = detail::read_dense<double>(in, rows, cols); break;
    }
  }
  in.expect_end();
  return out;
}

inline AnyMatrix deserialize(std::istream& is) {
  return deserialize_string(std::string(std::istreambuf_iterator<char>(is), {}));
}

}  // namespace molfp

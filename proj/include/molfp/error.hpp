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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace molfp {

enum class ErrorKind {
  Syntax,
  UnclosedRing,
  UnbalancedParen,
  ChargeOverflow,
  UnsupportedPrimitive,
  Valence,
  Aromaticity,
  KeySet,
  Fold,
  Shape,
  Format,
  Composition,
  Config,
  Io,
};

constexpr std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnclosedRing: return "UnclosedRing";
    case ErrorKind::UnbalancedParen: return "UnbalancedParen";
    case ErrorKind::ChargeOverflow: return "ChargeOverflow";
    case ErrorKind::UnsupportedPrimitive: return "UnsupportedPrimitive";
    case ErrorKind::Valence: return "ValenceError";
    case ErrorKind::Aromaticity: return "AromaticityError";
    case ErrorKind::KeySet: return "KeySetError";
    case ErrorKind::Fold: return "FoldError";
    case ErrorKind::Shape: return "ShapeError";
    case ErrorKind::Format: return "FormatError";
    case ErrorKind::Composition: return "CompositionError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

/// Base of every error raised by the library. `kind()` identifies the
/// failure class; subclasses add location data where it exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept { return molfp::kind_name(kind_); }

 private:
  ErrorKind kind_;
};

/// SMILES / SMARTS text errors. `position()` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t position, const std::string& message)
      : Error(kind, message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Chemically invalid graph; `atom()` names the offending atom.
class SanitizeError : public Error {
 public:
  SanitizeError(ErrorKind kind, std::size_t atom, const std::string& message)
      : Error(kind, message), atom_(atom) {}

  std::size_t atom() const noexcept { return atom_; }

 private:
  std::size_t atom_;
};

/// Malformed line-oriented input (matrix files, key sets). Lines are 1-based.
class FormatError : public Error {
 public:
  FormatError(ErrorKind kind, std::size_t line, const std::string& message)
      : Error(kind, "line " + std::to_string(line) + ": " + message), line_(line) {}
  FormatError(std::size_t line, const std::string& message)
      : FormatError(ErrorKind::Format, line, message) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace molfp

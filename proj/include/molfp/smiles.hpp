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

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molfp/element.hpp"
#include "molfp/error.hpp"
#include "molfp/molecule.hpp"

namespace molfp {

enum class SmilesTokenKind {
  OrganicAtom,
  BracketAtom,
  Bond,
  RingClosure,
  BranchOpen,
  BranchClose,
  Dot,
};

struct SmilesToken {
  SmilesTokenKind kind;
  std::string_view text;  // view into the tokenized input
  std::size_t begin = 0;  // byte offsets, half-open
  std::size_t end = 0;
};

namespace detail {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

inline std::pair<std::size_t, std::size_t> trimmed_range(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return {b, e};
}

/// Length of an organic-subset symbol at `pos`, or 0.
inline std::size_t organic_symbol_length(std::string_view text, std::size_t pos) {
  const char c = text[pos];
  const char next = pos + 1 < text.size() ? text[pos + 1] : '\0';
  switch (c) {
    case 'B': return next == 'r' ? 2 : 1;
    case 'C': return next == 'l' ? 2 : 1;
    case 'N': case 'O': case 'P': case 'S': case 'F': case 'I':
    case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
      return 1;
    default:
      return 0;
  }
}

}  // namespace detail

/// Splits a SMILES string into tokens. Leading and trailing whitespace is
/// ignored; token offsets refer to the untrimmed input.
inline std::vector<SmilesToken> tokenize_smiles(std::string_view text) {
  using detail::is_digit;
  auto [pos, stop] = detail::trimmed_range(text);
  if (pos == stop) throw ParseError(ErrorKind::Syntax, 0, "empty SMILES");

  std::vector<SmilesToken> tokens;
  auto emit = [&](SmilesTokenKind kind, std::size_t len) {
    tokens.push_back({kind, text.substr(pos, len), pos, pos + len});
    pos += len;
  };
  while (pos < stop) {
    const char c = text[pos];
    if (auto len = detail::organic_symbol_length(text.substr(0, stop), pos); len > 0) {
      emit(SmilesTokenKind::OrganicAtom, len);
      continue;
    }
    switch (c) {
      case '[': {
        auto close = text.find(']', pos);
        if (close == std::string_view::npos || close >= stop)
          throw ParseError(ErrorKind::Syntax, pos, "unterminated bracket atom");
        emit(SmilesTokenKind::BracketAtom, close - pos + 1);
        break;
      }
      case '-': case '=': case '#': case ':': case '/': case '\\':
        emit(SmilesTokenKind::Bond, 1);
        break;
      case '(':
        emit(SmilesTokenKind::BranchOpen, 1);
        break;
      case ')':
        emit(SmilesTokenKind::BranchClose, 1);
        break;
      case '.':
        emit(SmilesTokenKind::Dot, 1);
        break;
      case '%':
        if (pos + 2 >= stop || !is_digit(text[pos + 1]) || !is_digit(text[pos + 2]))
          throw ParseError(ErrorKind::Syntax, pos, "'%' must be followed by two digits");
        emit(SmilesTokenKind::RingClosure, 3);
        break;
      default:
        if (is_digit(c)) {
          emit(SmilesTokenKind::RingClosure, 1);
          break;
        }
        throw ParseError(ErrorKind::Syntax, pos,
                         std::string("unknown symbol '") + c + "'");
    }
  }
  return tokens;
}

namespace detail {

inline AtomDraft organic_atom(std::string_view symbol) {
  AtomDraft atom;
  if (is_lower(symbol[0])) {
    atom.aromatic = true;
    std::string upper(symbol);
    upper[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(upper[0])));
    atom.element = *element_from_symbol(upper);
  } else {
    atom.element = *element_from_symbol(symbol);
  }
  return atom;
}

/// Parses the inside of "[...]". `offset` is the position of '['.
inline AtomDraft bracket_atom(std::string_view token, std::size_t offset, bool& stereo) {
  AtomDraft atom;
  atom.explicit_h = 0;
  std::size_t i = 1;
  const std::size_t end = token.size() - 1;  // index of ']'
  auto fail = [&](const std::string& what) {
    return ParseError(ErrorKind::Syntax, offset + i, what);
  };
  auto read_number = [&]() -> std::optional<std::uint32_t> {
    if (i >= end || !is_digit(token[i])) return std::nullopt;
    std::uint64_t value = 0;
    while (i < end && is_digit(token[i])) {
      value = value * 10 + static_cast<std::uint64_t>(token[i] - '0');
      if (value > 100000) throw fail("number too large");
      ++i;
    }
    return static_cast<std::uint32_t>(value);
  };

  atom.isotope = read_number();

  if (i >= end) throw fail("missing element symbol");
  if (is_upper(token[i])) {
    std::optional<AtomicNumber> z;
    if (i + 1 < end && is_lower(token[i + 1])) {
      z = element_from_symbol(token.substr(i, 2));
      if (z) i += 2;
    }
    if (!z) {
      z = element_from_symbol(token.substr(i, 1));
      if (!z) throw fail("unknown element symbol");
      ++i;
    }
    atom.element = *z;
  } else if (is_lower(token[i])) {
    static constexpr std::string_view kTwoLetter[] = {"se", "as", "te"};
    std::optional<AtomicNumber> z;
    for (auto sym : kTwoLetter) {
      if (token.substr(i, 2) == sym) {
        std::string upper(sym);
        upper[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(upper[0])));
        z = element_from_symbol(upper);
        i += 2;
        break;
      }
    }
    if (!z) {
      const char c = token[i];
      if (c != 'b' && c != 'c' && c != 'n' && c != 'o' && c != 'p' && c != 's')
        throw fail("unknown aromatic symbol");
      z = element_from_symbol(std::string(1, static_cast<char>(std::toupper(c))));
      ++i;
    }
    atom.element = *z;
    atom.aromatic = true;
  } else if (token[i] == '*') {
    throw fail("wildcard atoms are not supported");
  } else {
    throw fail("missing element symbol");
  }

  if (i < end && token[i] == '@') {
    stereo = true;
    ++i;
    if (i < end && token[i] == '@') {
      ++i;
    } else if (i + 1 < end && is_upper(token[i]) && is_upper(token[i + 1])) {
      i += 2;  // @TH1, @SP2, @OH12 ...
      read_number();
    }
  }

  if (i < end && token[i] == 'H') {
    ++i;
    atom.explicit_h = read_number().value_or(1);
  }

  if (i < end && (token[i] == '+' || token[i] == '-')) {
    const char sign_char = token[i];
    const int sign = sign_char == '+' ? 1 : -1;
    const std::size_t charge_pos = i;
    ++i;
    long magnitude = 1;
    if (auto n = read_number()) {
      magnitude = static_cast<long>(*n);
    } else {
      while (i < end && token[i] == sign_char) {
        ++magnitude;
        ++i;
      }
    }
    if (magnitude > 15)
      throw ParseError(ErrorKind::ChargeOverflow, offset + charge_pos,
                       "charge magnitude exceeds 15");
    atom.formal_charge = sign * static_cast<int>(magnitude);
  }

  if (i < end && token[i] == ':') {
    ++i;
    if (!read_number()) throw fail("atom map requires a number");
  }

  if (i != end) throw fail("unexpected character in bracket atom");
  if (atom.aromatic && !may_be_aromatic(atom.element)) throw fail("element cannot be aromatic");
  return atom;
}

inline BondOrder bond_from_symbol(char c) {
  switch (c) {
    case '=': return BondOrder::Double;
    case '#': return BondOrder::Triple;
    case ':': return BondOrder::Aromatic;
    default: return BondOrder::Single;
  }
}

inline int ring_number(std::string_view text) {
  return text.size() == 1 ? text[0] - '0' : (text[1] - '0') * 10 + (text[2] - '0');
}

}  // namespace detail

/// Parses SMILES into an unsanitized graph.
///
/// Unspecified bonds between two aromatic atoms are aromatic, otherwise
/// single. Stereo marks ('/', '\', '@') are accepted and dropped; the draft's
/// `stereo_ignored` flag records that this happened.
inline MoleculeDraft parse_smiles(std::string_view text) {
  const auto tokens = tokenize_smiles(text);

  MoleculeDraft draft;
  draft.source_text = std::string(text);

  struct PendingBond {
    BondOrder order;
    std::size_t position;
  };
  struct OpenRing {
    std::uint32_t atom;
    std::optional<BondOrder> order;
    std::size_t position;
  };

  std::optional<std::uint32_t> prev;
  std::optional<PendingBond> pending;
  std::vector<std::pair<std::uint32_t, std::size_t>> branches;  // (atom, '(' position)
  std::map<int, OpenRing> open_rings;
  bool branch_empty = false;

  auto default_order = [&](std::uint32_t a, std::uint32_t b) {
    return draft.atoms[a].aromatic && draft.atoms[b].aromatic ? BondOrder::Aromatic
                                                               : BondOrder::Single;
  };
  auto connect = [&](std::uint32_t a, std::uint32_t b, std::optional<BondOrder> order,
                     std::size_t pos) {
    if (a == b) throw ParseError(ErrorKind::Syntax, pos, "ring closure to the same atom");
    if (draft.find_bond(a, b)) throw ParseError(ErrorKind::Syntax, pos, "duplicate bond");
    draft.add_bond(a, b, order.value_or(default_order(a, b)));
  };

  for (const auto& tok : tokens) {
    switch (tok.kind) {
      case SmilesTokenKind::OrganicAtom:
      case SmilesTokenKind::BracketAtom: {
        AtomDraft atom = tok.kind == SmilesTokenKind::OrganicAtom
                             ? detail::organic_atom(tok.text)
                             : detail::bracket_atom(tok.text, tok.begin, draft.stereo_ignored);
        const auto idx = draft.add_atom(atom);
        if (prev) {
          connect(*prev, idx, pending ? std::optional(pending->order) : std::nullopt, tok.begin);
        } else if (pending) {
          throw ParseError(ErrorKind::Syntax, pending->position, "bond without a preceding atom");
        }
        pending.reset();
        prev = idx;
        branch_empty = false;
        break;
      }
      case SmilesTokenKind::Bond: {
        if (!prev) throw ParseError(ErrorKind::Syntax, tok.begin, "bond without a preceding atom");
        if (pending) throw ParseError(ErrorKind::Syntax, tok.begin, "consecutive bond symbols");
        if (tok.text[0] == '/' || tok.text[0] == '\\') draft.stereo_ignored = true;
        pending = PendingBond{detail::bond_from_symbol(tok.text[0]), tok.begin};
        break;
      }
      case SmilesTokenKind::RingClosure: {
        if (!prev) throw ParseError(ErrorKind::Syntax, tok.begin, "ring closure without an atom");
        const int number = detail::ring_number(tok.text);
        std::optional<BondOrder> order;
        if (pending) order = pending->order;
        if (auto it = open_rings.find(number); it != open_rings.end()) {
          if (order && it->second.order && *order != *it->second.order)
            throw ParseError(ErrorKind::Syntax, tok.begin, "conflicting ring-closure bond orders");
          if (!order) order = it->second.order;
          connect(it->second.atom, *prev, order, tok.begin);
          open_rings.erase(it);
        } else {
          open_rings.emplace(number, OpenRing{*prev, order, tok.begin});
        }
        pending.reset();
        break;
      }
      case SmilesTokenKind::BranchOpen:
        if (!prev) throw ParseError(ErrorKind::Syntax, tok.begin, "branch without an atom");
        if (pending) throw ParseError(ErrorKind::Syntax, tok.begin, "bond before branch");
        branches.emplace_back(*prev, tok.begin);
        branch_empty = true;
        break;
      case SmilesTokenKind::BranchClose:
        if (branches.empty())
          throw ParseError(ErrorKind::UnbalancedParen, tok.begin, "unmatched ')'");
        if (pending) throw ParseError(ErrorKind::Syntax, pending->position, "dangling bond");
        if (branch_empty) throw ParseError(ErrorKind::Syntax, tok.begin, "empty branch");
        prev = branches.back().first;
        branches.pop_back();
        break;
      case SmilesTokenKind::Dot:
        if (!prev) throw ParseError(ErrorKind::Syntax, tok.begin, "'.' without a preceding atom");
        if (pending) throw ParseError(ErrorKind::Syntax, pending->position, "dangling bond");
        if (!branches.empty())
          throw ParseError(ErrorKind::Syntax, tok.begin, "'.' inside a branch");
        prev.reset();
        break;
    }
  }

  if (pending) throw ParseError(ErrorKind::Syntax, pending->position, "dangling bond");
  if (tokens.back().kind == SmilesTokenKind::Dot)
    throw ParseError(ErrorKind::Syntax, tokens.back().begin, "trailing '.'");
  if (!branches.empty())
    throw ParseError(ErrorKind::UnbalancedParen, branches.back().second, "unmatched '('");
  if (!open_rings.empty()) {
    const auto& ring = open_rings.begin()->second;
    throw ParseError(ErrorKind::UnclosedRing, ring.position,
                     "ring closure " + std::to_string(open_rings.begin()->first) + " never closed");
  }
  return draft;
}

/// parse_smiles followed by sanitize.
inline Molecule parse_molecule(std::string_view text) { return sanitize(parse_smiles(text)); }

}  // namespace molfp

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

enum class AtomPrimitive : std::uint8_t {
  Any,           // *
  AtomicNumber,  // #n
  Element,       // C, c, [Cl], [se] ... (value = Z, aromatic flag)
  Aromatic,      // a
  Aliphatic,     // A
  Degree,        // Dn
  TotalH,        // Hn
  Connectivity,  // Xn
  InRing,        // R  or r without a number
  RingCount,     // Rn
  SmallestRing,  // rn
  Charge,        // + - +n -n
};

enum class BondPrimitive : std::uint8_t { Single, Double, Triple, Aromatic, Any, Ring };

enum class ExprOp : std::uint8_t { Leaf, Not, And, Or };

/// Boolean expression over primitives, stored as a node array; node 0 is the
/// root. `LowAnd` (';') and high-precedence '&' share the And node.
template <class Primitive>
struct QueryExpr {
  struct Node {
    ExprOp op = ExprOp::Leaf;
    Primitive primitive{};
    int value = 0;
    bool aromatic = false;  // Element only
    std::vector<std::uint32_t> children;
  };
  std::vector<Node> nodes;

  template <class Leaf>
  bool evaluate(Leaf&& leaf, std::uint32_t node = 0) const {
    const auto& n = nodes[node];
    switch (n.op) {
      case ExprOp::Leaf: return leaf(n);
      case ExprOp::Not: return !evaluate(leaf, n.children[0]);
      case ExprOp::And:
        for (auto c : n.children) {
          if (!evaluate(leaf, c)) return false;
        }
        return true;
      case ExprOp::Or:
        for (auto c : n.children) {
          if (evaluate(leaf, c)) return true;
        }
        return false;
    }
    return false;
  }
};

using AtomExpr = QueryExpr<AtomPrimitive>;
using BondExpr = QueryExpr<BondPrimitive>;

struct QueryBond {
  std::uint32_t begin;
  std::uint32_t end;
  BondExpr expr;
};

/// Compiled SMARTS query graph. Immutable after parsing.
class SmartsPattern {
 public:
  std::size_t num_atoms() const noexcept { return atoms_.size(); }
  std::size_t num_bonds() const noexcept { return bonds_.size(); }
  const AtomExpr& atom(std::size_t i) const { return atoms_[i]; }
  const QueryBond& bond(std::size_t i) const { return bonds_[i]; }
  const std::string& text() const noexcept { return text_; }

  bool atom_matches(std::size_t q, const Molecule& mol, std::size_t t) const {
    const auto& a = mol.atom(t);
    const auto& rings = mol.ring_info();
    return atoms_[q].evaluate([&](const AtomExpr::Node& n) {
      switch (n.primitive) {
        case AtomPrimitive::Any: return true;
        case AtomPrimitive::AtomicNumber: return a.element == n.value;
        case AtomPrimitive::Element: return a.element == n.value && a.aromatic == n.aromatic;
        case AtomPrimitive::Aromatic: return a.aromatic;
        case AtomPrimitive::Aliphatic: return !a.aromatic;
        case AtomPrimitive::Degree: return static_cast<int>(a.degree) == n.value;
        case AtomPrimitive::TotalH: return static_cast<int>(mol.total_h(t)) == n.value;
        case AtomPrimitive::Connectivity:
          return static_cast<int>(a.degree + a.implicit_h) == n.value;
        case AtomPrimitive::InRing: return static_cast<bool>(rings.atom_in_ring[t]);
        case AtomPrimitive::RingCount: return static_cast<int>(rings.atom_ring_count[t]) == n.value;
        case AtomPrimitive::SmallestRing:
          return rings.smallest_ring_size[t] &&
                 static_cast<int>(*rings.smallest_ring_size[t]) == n.value;
        case AtomPrimitive::Charge: return a.formal_charge == n.value;
      }
      return false;
    });
  }

  bool bond_matches(std::size_t q, const Molecule& mol, std::size_t b) const {
    const auto order = mol.bond(b).order;
    const bool in_ring = mol.ring_info().bond_in_ring[b];
    return bonds_[q].expr.evaluate([&](const BondExpr::Node& n) {
      switch (n.primitive) {
        case BondPrimitive::Single: return order == BondOrder::Single;
        case BondPrimitive::Double: return order == BondOrder::Double;
        case BondPrimitive::Triple: return order == BondOrder::Triple;
        case BondPrimitive::Aromatic: return order == BondOrder::Aromatic;
        case BondPrimitive::Any: return true;
        case BondPrimitive::Ring: return in_ring;
      }
      return false;
    });
  }

 private:
  friend class SmartsParser;

  std::string text_;
  std::vector<AtomExpr> atoms_;
  std::vector<QueryBond> bonds_;
};

/// Recursive-descent SMARTS compiler for the supported subset.
/// Precedence, tightest first: '!', '&' (and juxtaposition), ',', ';'.
class SmartsParser {
 public:
  explicit SmartsParser(std::string_view text) : text_(text) {}

  SmartsPattern parse() {
    if (text_.empty()) throw ParseError(ErrorKind::Syntax, 0, "empty SMARTS");
    pattern_.text_ = std::string(text_);

    std::optional<std::uint32_t> prev;
    std::optional<BondExpr> pending;
    std::size_t pending_pos = 0;
    std::vector<std::pair<std::uint32_t, std::size_t>> branches;
    struct OpenRing {
      std::uint32_t atom;
      std::optional<BondExpr> bond;
      std::size_t position;
    };
    std::map<int, OpenRing> open_rings;
    bool branch_empty = false;

    auto link = [&](std::uint32_t a, std::uint32_t b, std::optional<BondExpr> bond,
                    std::size_t at) {
      if (a == b) throw ParseError(ErrorKind::Syntax, at, "ring closure to the same atom");
      for (const auto& qb : pattern_.bonds_) {
        if ((qb.begin == a && qb.end == b) || (qb.begin == b && qb.end == a))
          throw ParseError(ErrorKind::Syntax, at, "duplicate bond");
      }
      pattern_.bonds_.push_back({a, b, bond ? std::move(*bond) : default_bond(a, b)});
    };

    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const std::size_t start = pos_;
      if (c == '(') {
        if (!prev) throw ParseError(ErrorKind::Syntax, pos_, "branch without an atom");
        if (pending) throw ParseError(ErrorKind::Syntax, pos_, "bond before branch");
        branches.emplace_back(*prev, pos_);
        branch_empty = true;
        ++pos_;
      } else if (c == ')') {
        if (branches.empty()) throw ParseError(ErrorKind::UnbalancedParen, pos_, "unmatched ')'");
        if (pending) throw ParseError(ErrorKind::Syntax, pending_pos, "dangling bond");
        if (branch_empty) throw ParseError(ErrorKind::Syntax, pos_, "empty branch");
        prev = branches.back().first;
        branches.pop_back();
        ++pos_;
      } else if (c == '.') {
        if (!prev || pending || !branches.empty())
          throw ParseError(ErrorKind::Syntax, pos_, "misplaced '.'");
        prev.reset();
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (!prev) throw ParseError(ErrorKind::Syntax, pos_, "ring closure without an atom");
        int number;
        if (c == '%') {
          if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
              !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
            throw ParseError(ErrorKind::Syntax, pos_, "'%' must be followed by two digits");
          number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
          pos_ += 3;
        } else {
          number = c - '0';
          ++pos_;
        }
        if (auto it = open_rings.find(number); it != open_rings.end()) {
          auto bond = pending ? std::move(pending) : std::move(it->second.bond);
          link(it->second.atom, *prev, std::move(bond), start);
          open_rings.erase(it);
        } else {
          open_rings.emplace(number, OpenRing{*prev, std::move(pending), start});
        }
        pending.reset();
      } else if (is_bond_char(c)) {
        if (!prev) throw ParseError(ErrorKind::Syntax, pos_, "bond without a preceding atom");
        if (pending) throw ParseError(ErrorKind::Syntax, pos_, "consecutive bonds");
        pending_pos = pos_;
        pending = parse_bond_expr();
      } else {
        const auto idx = parse_atom();
        if (prev) {
          link(*prev, idx, std::move(pending), start);
        } else if (pending) {
          throw ParseError(ErrorKind::Syntax, pending_pos, "bond without a preceding atom");
        }
        pending.reset();
        prev = idx;
        branch_empty = false;
      }
    }
    if (pending) throw ParseError(ErrorKind::Syntax, pending_pos, "dangling bond");
    if (!branches.empty())
      throw ParseError(ErrorKind::UnbalancedParen, branches.back().second, "unmatched '('");
    if (!open_rings.empty())
      throw ParseError(ErrorKind::UnclosedRing, open_rings.begin()->second.position,
                       "ring closure never closed");
    if (pattern_.atoms_.empty()) throw ParseError(ErrorKind::Syntax, 0, "pattern has no atoms");
    return std::move(pattern_);
  }

 private:
  static bool is_bond_char(char c) {
    switch (c) {
      case '-': case '=': case '#': case ':': case '~': case '@': case '!':
      case '/': case '\\':
        return true;
      default:
        return false;
    }
  }

  [[noreturn]] void unsupported(const std::string& what) const {
    throw ParseError(ErrorKind::UnsupportedPrimitive, pos_, what);
  }
  [[noreturn]] void syntax(const std::string& what) const {
    throw ParseError(ErrorKind::Syntax, pos_, what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  std::optional<int> read_number() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) return std::nullopt;
    int value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000) syntax("number too large");
      ++pos_;
    }
    return value;
  }

  // Generic precedence climbing shared by atom and bond expressions.
  template <class Expr, class LeafFn, class StopFn>
  Expr parse_expression(LeafFn&& leaf, StopFn&& stop) {
    Expr expr;
    const auto root = parse_level<Expr>(expr, 0, leaf, stop);
    // Move the root node to index 0.
    if (root != 0) {
      std::swap(expr.nodes[0], expr.nodes[root]);
      for (auto& n : expr.nodes) {
        for (auto& c : n.children) {
          if (c == 0) c = root;
          else if (c == root) c = 0;
        }
      }
    }
    return expr;
  }

  // level 0: ';'  level 1: ','  level 2: '&' / juxtaposition  level 3: '!' / leaf
  template <class Expr, class LeafFn, class StopFn>
  std::uint32_t parse_level(Expr& expr, int level, LeafFn& leaf, StopFn& stop) {
    if (level == 3) {
      if (peek() == '!') {
        ++pos_;
        const auto child = parse_level<Expr>(expr, 3, leaf, stop);
        typename Expr::Node node;
        node.op = ExprOp::Not;
        node.children = {child};
        expr.nodes.push_back(std::move(node));
        return static_cast<std::uint32_t>(expr.nodes.size() - 1);
      }
      if (at_end() || stop(peek())) syntax("expected a primitive");
      expr.nodes.push_back(leaf());
      return static_cast<std::uint32_t>(expr.nodes.size() - 1);
    }

    std::vector<std::uint32_t> operands{parse_level<Expr>(expr, level + 1, leaf, stop)};
    while (!at_end() && !stop(peek())) {
      const char c = peek();
      if (level == 0 && c == ';') {
        ++pos_;
      } else if (level == 1 && c == ',') {
        ++pos_;
      } else if (level == 2 && c == '&') {
        ++pos_;
      } else if (level == 2 && c != ';' && c != ',') {
        // juxtaposition is an implicit high-precedence AND
      } else {
        break;
      }
      operands.push_back(parse_level<Expr>(expr, level + 1, leaf, stop));
    }
    if (operands.size() == 1) return operands[0];
    typename Expr::Node node;
    node.op = level == 1 ? ExprOp::Or : ExprOp::And;
    node.children = std::move(operands);
    expr.nodes.push_back(std::move(node));
    return static_cast<std::uint32_t>(expr.nodes.size() - 1);
  }

  AtomExpr::Node atom_leaf(AtomPrimitive p, int value = 0, bool aromatic = false) {
    AtomExpr::Node n;
    n.primitive = p;
    n.value = value;
    n.aromatic = aromatic;
    return n;
  }

  /// Element symbol at the cursor (bracket context), or nullopt.
  std::optional<AtomExpr::Node> try_element() {
    const char c = peek();
    if (std::isupper(static_cast<unsigned char>(c))) {
      const char d = peek(1);
      if (std::islower(static_cast<unsigned char>(d))) {
        if (auto z = element_from_symbol(text_.substr(pos_, 2))) {
          pos_ += 2;
          return atom_leaf(AtomPrimitive::Element, *z, false);
        }
      }
      if (c == 'H' || c == 'D' || c == 'X' || c == 'R' || c == 'A') return std::nullopt;
      if (auto z = element_from_symbol(text_.substr(pos_, 1))) {
        ++pos_;
        return atom_leaf(AtomPrimitive::Element, *z, false);
      }
      return std::nullopt;
    }
    static constexpr std::string_view kTwo[] = {"se", "as", "te"};
    for (auto sym : kTwo) {
      if (text_.substr(pos_, 2) == sym) {
        std::string upper(sym);
        upper[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(upper[0])));
        pos_ += 2;
        return atom_leaf(AtomPrimitive::Element, *element_from_symbol(upper), true);
      }
    }
    switch (c) {
      case 'b': case 'c': case 'n': case 'o': case 'p': case 's': {
        ++pos_;
        const std::string upper(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        return atom_leaf(AtomPrimitive::Element, *element_from_symbol(upper), true);
      }
      default:
        return std::nullopt;
    }
  }

  AtomExpr::Node bracket_primitive(bool first) {
    const char c = peek();
    if (c == '$') unsupported("recursive SMARTS is not supported");
    if (c == '@') unsupported("chirality is not supported");
    if (std::isdigit(static_cast<unsigned char>(c))) unsupported("isotope primitives are not supported");
    // "[H]", "[H+]": hydrogen as an element when it opens the expression.
    if (c == 'H' && first) {
      const char d = peek(1);
      if (d == ']' || d == '+' || d == '-') {
        ++pos_;
        return atom_leaf(AtomPrimitive::AtomicNumber, 1);
      }
    }
    if (auto element = try_element()) return *element;
    ++pos_;
    switch (c) {
      case '*': return atom_leaf(AtomPrimitive::Any);
      case 'a': return atom_leaf(AtomPrimitive::Aromatic);
      case 'A': return atom_leaf(AtomPrimitive::Aliphatic);
      case '#': {
        auto n = read_number();
        if (!n || *n < 1 || *n > kMaxAtomicNumber) syntax("'#' requires an atomic number");
        return atom_leaf(AtomPrimitive::AtomicNumber, *n);
      }
      case 'D': return atom_leaf(AtomPrimitive::Degree, read_number().value_or(1));
      case 'H': return atom_leaf(AtomPrimitive::TotalH, read_number().value_or(1));
      case 'X': return atom_leaf(AtomPrimitive::Connectivity, read_number().value_or(1));
      case 'R':
        if (auto n = read_number()) return atom_leaf(AtomPrimitive::RingCount, *n);
        return atom_leaf(AtomPrimitive::InRing);
      case 'r':
        if (auto n = read_number()) return atom_leaf(AtomPrimitive::SmallestRing, *n);
        return atom_leaf(AtomPrimitive::InRing);
      case '+':
      case '-': {
        const int sign = c == '+' ? 1 : -1;
        int magnitude = 1;
        if (auto n = read_number()) {
          magnitude = *n;
        } else {
          while (peek() == c) {
            ++magnitude;
            ++pos_;
          }
        }
        if (magnitude > 15) throw ParseError(ErrorKind::ChargeOverflow, pos_, "charge magnitude exceeds 15");
        return atom_leaf(AtomPrimitive::Charge, sign * magnitude);
      }
      case 'h': case 'v': case 'x': case 'z': case 'Z': case '^': case ':':
        --pos_;
        unsupported(std::string("primitive '") + c + "' is not supported");
      default:
        --pos_;
        syntax(std::string("unexpected character '") + c + "'");
    }
  }

  std::uint32_t parse_atom() {
    AtomExpr expr;
    const char c = peek();
    if (c == '[') {
      ++pos_;
      bool first = true;
      expr = parse_expression<AtomExpr>(
          [&] {
            auto leaf = bracket_primitive(first);
            first = false;
            return leaf;
          },
          [](char ch) { return ch == ']'; });
      if (peek() != ']') syntax("unterminated bracket atom");
      ++pos_;
    } else {
      AtomExpr::Node leaf;
      if (c == '*') {
        ++pos_;
        leaf = atom_leaf(AtomPrimitive::Any);
      } else if (c == 'a') {
        ++pos_;
        leaf = atom_leaf(AtomPrimitive::Aromatic);
      } else if (c == 'A') {
        ++pos_;
        leaf = atom_leaf(AtomPrimitive::Aliphatic);
      } else if (c == '$') {
        unsupported("recursive SMARTS is not supported");
      } else {
        std::string_view sym;
        if ((c == 'C' && peek(1) == 'l') || (c == 'B' && peek(1) == 'r')) {
          sym = text_.substr(pos_, 2);
        } else if (std::string_view("BCNOPSFIbcnops").find(c) != std::string_view::npos) {
          sym = text_.substr(pos_, 1);
        } else if (c == '>' ) {
          unsupported("reaction SMARTS is not supported");
        } else {
          syntax(std::string("unexpected character '") + c + "'");
        }
        pos_ += sym.size();
        const bool aromatic = std::islower(static_cast<unsigned char>(sym[0])) != 0;
        std::string upper(sym);
        upper[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(upper[0])));
        leaf = atom_leaf(AtomPrimitive::Element, *element_from_symbol(upper), aromatic);
      }
      expr.nodes.push_back(leaf);
    }
    pattern_.atoms_.push_back(std::move(expr));
    return static_cast<std::uint32_t>(pattern_.atoms_.size() - 1);
  }

  BondExpr::Node bond_leaf() {
    BondExpr::Node n;
    const char c = peek();
    switch (c) {
      case '-': n.primitive = BondPrimitive::Single; break;
      case '=': n.primitive = BondPrimitive::Double; break;
      case '#': n.primitive = BondPrimitive::Triple; break;
      case ':': n.primitive = BondPrimitive::Aromatic; break;
      case '~': n.primitive = BondPrimitive::Any; break;
      case '@': n.primitive = BondPrimitive::Ring; break;
      case '/': case '\\': unsupported("directional bonds are not supported");
      default: syntax(std::string("unexpected bond character '") + c + "'");
    }
    ++pos_;
    return n;
  }

  BondExpr parse_bond_expr() {
    return parse_expression<BondExpr>([&] { return bond_leaf(); },
                                      [](char ch) { return !is_bond_char(ch) && ch != '&' && ch != ',' && ch != ';'; });
  }

  static bool implies_aromatic(const AtomExpr& expr, std::uint32_t node = 0) {
    const auto& n = expr.nodes[node];
    switch (n.op) {
      case ExprOp::Leaf:
        return n.primitive == AtomPrimitive::Aromatic ||
               (n.primitive == AtomPrimitive::Element && n.aromatic);
      case ExprOp::Not: return false;
      case ExprOp::And:
        for (auto c : n.children) {
          if (implies_aromatic(expr, c)) return true;
        }
        return false;
      case ExprOp::Or:
        for (auto c : n.children) {
          if (!implies_aromatic(expr, c)) return false;
        }
        return true;
    }
    return false;
  }

  /// Unspecified bond: "single or aromatic" between two aromatic query
  /// atoms, "single" otherwise.
  BondExpr default_bond(std::uint32_t a, std::uint32_t b) const {
    BondExpr expr;
    BondExpr::Node single;
    single.primitive = BondPrimitive::Single;
    if (implies_aromatic(pattern_.atoms_[a]) && implies_aromatic(pattern_.atoms_[b])) {
      BondExpr::Node root;
      root.op = ExprOp::Or;
      root.children = {1, 2};
      BondExpr::Node aromatic;
      aromatic.primitive = BondPrimitive::Aromatic;
      expr.nodes = {root, aromatic, single};
    } else {
      expr.nodes = {single};
    }
    return expr;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  SmartsPattern pattern_;
};

inline SmartsPattern parse_smarts(std::string_view text) { return SmartsParser(text).parse(); }

}  // namespace molfp

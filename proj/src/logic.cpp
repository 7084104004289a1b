// Copyright 2026 The Nucleo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nucleo/logic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <utility>

namespace nucleo::logic {

struct Formula::Node {
  Op op;
  std::string name;
  std::optional<Formula> left;
  std::optional<Formula> right;
};

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom names must be nonempty");
  return Formula(std::make_shared<const Node>(Node{Op::atom, std::move(name), {}, {}}));
}

Formula::Op Formula::op() const { return node_->op; }

const std::string& Formula::name() const {
  if (node_->op != Op::atom) throw std::logic_error("name() of a compound formula");
  return node_->name;
}

const Formula& Formula::operand() const {
  if (node_->op != Op::negation) throw std::logic_error("operand() of a non-negation");
  return *node_->left;
}

const Formula& Formula::left() const {
  if (!node_->right) throw std::logic_error("left() of a non-binary formula");
  return *node_->left;
}

const Formula& Formula::right() const {
  if (!node_->right) throw std::logic_error("right() of a non-binary formula");
  return *node_->right;
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  std::vector<const Formula*> stack{this};
  while (!stack.empty()) {
    const Formula* f = stack.back();
    stack.pop_back();
    if (f->node_->op == Op::atom) {
      out.insert(f->node_->name);
      continue;
    }
    if (f->node_->left) stack.push_back(&*f->node_->left);
    if (f->node_->right) stack.push_back(&*f->node_->right);
  }
  return out;
}

namespace {

const char* symbol(Formula::Op op) {
  switch (op) {
    case Formula::Op::conjunction: return "∧";
    case Formula::Op::disjunction: return "∨";
    case Formula::Op::implication: return "⇒";
    case Formula::Op::converse: return "⇐";
    case Formula::Op::equivalence: return "⇔";
    default: return "?";
  }
}

}  // namespace

std::string Formula::str() const {
  switch (node_->op) {
    case Op::atom: return node_->name;
    case Op::negation: return "¬" + node_->left->str();
    default:
      return "(" + node_->left->str() + " " + symbol(node_->op) + " " + node_->right->str() + ")";
  }
}

Formula make_binary(Formula::Op op, const Formula& a, const Formula& b) {
  return Formula(std::make_shared<const Formula::Node>(Formula::Node{op, {}, a, b}));
}

Formula operator!(const Formula& f) {
  return Formula(std::make_shared<const Formula::Node>(Formula::Node{Formula::Op::negation, {}, f, {}}));
}

Formula operator&(const Formula& a, const Formula& b) {
  return make_binary(Formula::Op::conjunction, a, b);
}

Formula operator|(const Formula& a, const Formula& b) {
  return make_binary(Formula::Op::disjunction, a, b);
}

Formula implies(const Formula& a, const Formula& b) { return make_binary(Formula::Op::implication, a, b); }
Formula implied_by(const Formula& a, const Formula& b) { return make_binary(Formula::Op::converse, a, b); }
Formula iff(const Formula& a, const Formula& b) { return make_binary(Formula::Op::equivalence, a, b); }

bool eval_formula(const Formula& f, const Assignment& assignment) {
  switch (f.op()) {
    case Formula::Op::atom: {
      auto it = assignment.find(f.name());
      if (it == assignment.end()) throw std::invalid_argument("no truth value for atom " + f.name());
      return it->second;
    }
    case Formula::Op::negation: return !eval_formula(f.operand(), assignment);
    case Formula::Op::conjunction:
      return eval_formula(f.left(), assignment) && eval_formula(f.right(), assignment);
    case Formula::Op::disjunction:
      return eval_formula(f.left(), assignment) || eval_formula(f.right(), assignment);
    case Formula::Op::implication:
      return !eval_formula(f.left(), assignment) || eval_formula(f.right(), assignment);
    case Formula::Op::converse:
      return eval_formula(f.left(), assignment) || !eval_formula(f.right(), assignment);
    case Formula::Op::equivalence:
      return eval_formula(f.left(), assignment) == eval_formula(f.right(), assignment);
  }
  return false;
}

namespace {

Assignment assignment_for(const std::vector<std::string>& atoms, std::uint64_t row) {
  Assignment a;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    a[atoms[k]] = ((row >> (atoms.size() - 1 - k)) & 1U) != 0;
  }
  return a;
}

}  // namespace

EquivalenceResult equivalent(const Formula& f, const Formula& g) {
  std::set<std::string> names = f.atoms();
  names.merge(g.atoms());
  if (names.size() > kMaxAtoms) {
    throw std::invalid_argument("equivalence check over " + std::to_string(names.size()) +
                                " atoms exceeds the limit of " + std::to_string(kMaxAtoms));
  }
  const std::vector<std::string> atoms(names.begin(), names.end());
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row) {
    Assignment a = assignment_for(atoms, row);
    if (eval_formula(f, a) != eval_formula(g, a)) return {false, std::move(a)};
  }
  return {true, std::nullopt};
}

FormulaParseError::FormulaParseError(const std::string& message, std::size_t position)
    : std::invalid_argument(message + " at offset " + std::to_string(position)), position_(position) {}

namespace {

enum class Tok { atom, lparen, rparen, negation, conjunction, disjunction, implication, converse, equivalence, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t position;
};

std::vector<Token> tokenize(std::string_view text) {
  static const std::array<std::pair<std::string_view, Tok>, 17> kSymbols{{
      {"<=>", Tok::equivalence}, {"⇔", Tok::equivalence}, {"↔", Tok::equivalence},
      {"=>", Tok::implication}, {"⇒", Tok::implication}, {"→", Tok::implication},
      {"<=", Tok::converse}, {"⇐", Tok::converse}, {"←", Tok::converse},
      {"|", Tok::disjunction}, {"∨", Tok::disjunction},
      {"&", Tok::conjunction}, {"∧", Tok::conjunction},
      {"~", Tok::negation}, {"!", Tok::negation}, {"¬", Tok::negation},
      {"(", Tok::lparen},
  }};
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == ')') {
      tokens.push_back({Tok::rparen, ")", i++});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      tokens.push_back({Tok::atom, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [sym, kind] : kSymbols) {
      if (text.substr(i).starts_with(sym)) {
        tokens.push_back({kind, std::string(sym), i});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw FormulaParseError("unexpected character '" + std::string(1, text[i]) + "'", i);
  }
  tokens.push_back({Tok::end, "", text.size()});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse() {
    Formula f = equivalence();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& message) const {
    throw FormulaParseError(message, peek().position);
  }

  Formula equivalence() {
    Formula f = implication();
    while (peek().kind == Tok::equivalence) {
      take();
      f = iff(f, implication());
    }
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (peek().kind == Tok::implication) {
      take();
      return implies(f, implication());
    }
    if (peek().kind == Tok::converse) {
      take();
      return implied_by(f, implication());
    }
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::disjunction) {
      take();
      f = f | conjunction();
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::conjunction) {
      take();
      f = f & unary();
    }
    return f;
  }

  Formula unary() {
    if (peek().kind == Tok::negation) {
      take();
      return !unary();
    }
    if (peek().kind == Tok::lparen) {
      take();
      Formula f = equivalence();
      if (peek().kind != Tok::rparen) fail("expected ')'");
      take();
      return f;
    }
    if (peek().kind == Tok::atom) return Formula::atom(take().text);
    if (peek().kind == Tok::end) fail("unexpected end of formula");
    fail("unexpected '" + peek().text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

namespace {

std::string header_for(const Formula& f) {
  std::string s = f.str();
  if (f.op() != Formula::Op::atom && f.op() != Formula::Op::negation) s = s.substr(1, s.size() - 2);
  return s;
}

// Display width in code points; the connective symbols are multi-byte.
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

}  // namespace

TruthTable truth_table(const std::vector<std::string>& atoms, const std::vector<Formula>& columns) {
  if (atoms.size() > kMaxAtoms) throw std::invalid_argument("too many atoms for a truth table");
  TruthTable table;
  table.atoms = atoms;
  table.columns = columns;
  for (const auto& c : columns) table.headers.push_back(header_for(c));
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row) {
    const Assignment a = assignment_for(atoms, row);
    std::vector<bool> values;
    values.reserve(columns.size());
    for (const auto& c : columns) values.push_back(eval_formula(c, a));
    table.rows.push_back(std::move(values));
  }
  return table;
}

std::string render(const TruthTable& table) {
  std::ostringstream out;
  std::vector<std::size_t> widths;
  for (const auto& h : table.headers) widths.push_back(std::max<std::size_t>(1, display_width(h)));
  auto cell = [&](std::string_view text, std::size_t width) {
    out << text << std::string(width - display_width(text), ' ');
  };
  for (std::size_t c = 0; c < table.headers.size(); ++c) {
    if (c > 0) out << " | ";
    cell(table.headers[c], widths[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << " | ";
      cell(row[c] ? "T" : "F", widths[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<TruthTable> indirect_proof_tables() {
  const Formula a = Formula::atom("A");
  const Formula b = Formula::atom("B");
  const std::vector<std::string> atoms{"A", "B"};
  return {
      truth_table(atoms, {a, b, !b, implies(a, b), !implies(a, b), implied_by(a, b), iff(a, b),
                          a | !b, a & b, a | b}),
      truth_table(atoms, {a, b, !a, !b, implies(!a, !b), a | !b, implied_by(!a, !b), (!a) | b,
                          a & !b, iff(!a, !b)}),
  };
}

std::vector<NamedEquivalence> indirect_proof_equivalences() {
  const Formula a = Formula::atom("A");
  const Formula b = Formula::atom("B");
  const Formula falsum = a & !a;
  const Formula premise = a & !b;
  return {
      {"implication vs contrapositive", implies(a, b), implies(!b, !a), true},
      {"implication vs disjunction", implies(a, b), (!a) | b, true},
      {"converse of negations vs disjunction", implied_by(!a, !b), (!a) | b, true},
      {"negated implication vs counter-case", !implies(a, b), a & !b, true},
      {"contradiction form A∧¬B ⇒ A∧¬A", implies(premise, falsum), implies(a, b), true},
      {"contradiction form A∧¬B ⇒ B∧¬B", implies(premise, b & !b), implies(a, b), true},
      {"(φ ⇒ ⊥) vs ¬φ with φ = A∧¬B", implies(premise, falsum), !premise, true},
      {"implication vs its converse", implies(a, b), implies(b, a), false},
  };
}

}  // namespace nucleo::logic

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

#ifndef NUCLEO_LOGIC_HPP
#define NUCLEO_LOGIC_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nucleo::logic {

using Assignment = std::map<std::string, bool, std::less<>>;

/// Immutable propositional formula over named atoms.
class Formula {
 public:
  enum class Op { atom, negation, conjunction, disjunction, implication, converse, equivalence };

  /// Throws std::invalid_argument for an empty name.
  static Formula atom(std::string name);

  Op op() const;
  const std::string& name() const;  // atoms only
  const Formula& operand() const;   // negation only
  const Formula& left() const;      // binary only
  const Formula& right() const;     // binary only

  std::set<std::string> atoms() const;

  /// Fully parenthesized except for atoms and negations, using the
  /// connective symbols ¬ ∧ ∨ ⇒ ⇐ ⇔.
  std::string str() const;

  friend Formula operator!(const Formula& f);
  friend Formula operator&(const Formula& a, const Formula& b);
  friend Formula operator|(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Formula make_binary(Formula::Op op, const Formula& a, const Formula& b);

  std::shared_ptr<const Node> node_;
};

Formula implies(const Formula& a, const Formula& b);     // a ⇒ b
Formula implied_by(const Formula& a, const Formula& b);  // a ⇐ b
Formula iff(const Formula& a, const Formula& b);         // a ⇔ b

/// Classical semantics; ⇒ is material implication. Throws
/// std::invalid_argument when an atom is missing from the assignment.
bool eval_formula(const Formula& f, const Assignment& assignment);

struct EquivalenceResult {
  bool equivalent = false;
  /// First differing assignment in truth-table order (when not equivalent).
  std::optional<Assignment> counterexample;
};

inline constexpr std::size_t kMaxAtoms = 20;

/// Exhaustive comparison over the union of atoms. Throws std::invalid_argument
/// beyond kMaxAtoms atoms.
EquivalenceResult equivalent(const Formula& f, const Formula& g);

class FormulaParseError : public std::invalid_argument {
 public:
  FormulaParseError(const std::string& message, std::size_t position);
  /// Byte offset into the parsed text.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Infix grammar, loosest to tightest: ⇔ (or <=>), ⇒ ⇐ (or => <=, right
/// associative), ∨ (or |), ∧ (or &), ¬ (or ~ !), atoms and parentheses.
Formula parse_formula(std::string_view text);

struct TruthTable {
  std::vector<std::string> atoms;
  std::vector<std::string> headers;
  std::vector<Formula> columns;
  /// rows[r][c]; rows enumerate assignments with false before true and the
  /// first atom varying slowest.
  std::vector<std::vector<bool>> rows;
};

TruthTable truth_table(const std::vector<std::string>& atoms, const std::vector<Formula>& columns);

std::string render(const TruthTable& table);

/// The two truth tables used to analyse the indirect-proof argument: the
/// connectives on A, B and the contrapositive forms.
std::vector<TruthTable> indirect_proof_tables();

struct NamedEquivalence {
  std::string label;
  Formula lhs;
  Formula rhs;
  bool expected;
};

/// Equivalence claims the indirect-proof analysis rests on, with the verdict
/// each should produce.
std::vector<NamedEquivalence> indirect_proof_equivalences();

}  // namespace nucleo::logic

#endif  // NUCLEO_LOGIC_HPP

// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rasm/value.hpp"

namespace rasm {

/// Immutable term AST. Function symbols are referenced by name; arity is
/// checked against the signature at evaluation time.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Apply, Op, Comprehension, Literal };

  static Term var(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});
  /// Background operator application (`+`, `union`, `label_hedge`, ...).
  static Term op(std::string name, std::vector<Term> args);
  /// ⟨⟨head | binders : guard⟩⟩
  static Term comprehension(Term head, std::vector<std::string> binders, Term guard);
  static Term literal(Value v);

  Kind kind() const noexcept;
  /// Variable name, function symbol, or operator name.
  const std::string& name() const;
  const std::vector<Term>& args() const;
  const Term& head() const;
  const Term& guard() const;
  const std::vector<std::string>& binders() const;
  const Value& value() const;

  std::size_t hash() const;
  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

  const std::shared_ptr<const detail::TermNode>& node() const noexcept { return node_; }
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {
struct TermNode {
  Term::Kind kind;
  std::string name;
  std::vector<Term> args;  // Apply/Op arguments; Comprehension: {head, guard}
  std::vector<std::string> binders;
  Value literal;
};
}  // namespace detail

class Rule;
namespace detail {
struct RuleNode;
}

/// Immutable rule AST over the seven rule forms.
class Rule {
 public:
  enum class Kind : std::uint8_t { Assign, Partial, If, Par, Forall, Let, Import };

  /// f(args) := rhs
  static Rule assign(std::string symbol, std::vector<Term> args, Term rhs);
  /// f(args) <<= op(operands)
  static Rule partial(std::string symbol, std::vector<Term> args, std::string op,
                      std::vector<Term> operands);
  static Rule ifThenElse(Term cond, Rule thenRule, Rule elseRule);
  static Rule par(std::vector<Rule> rules);
  static Rule skip() { return par({}); }
  static Rule forall(std::string var, Term guard, Rule body);
  static Rule let(std::string var, Term binding, Rule body);
  static Rule import(std::string var, Rule body);

  Kind kind() const noexcept;
  /// Assigned symbol (Assign/Partial) or bound variable (Forall/Let/Import).
  const std::string& name() const;
  const std::string& opName() const;
  /// Location arguments (Assign/Partial).
  const std::vector<Term>& args() const;
  /// Operands of a partial assignment.
  const std::vector<Term>& operands() const;
  /// rhs (Assign), condition (If), guard (Forall), binding (Let).
  const Term& term() const;
  /// Sub-rules: If {then, else}; Par members; Forall/Let/Import {body}.
  const std::vector<Rule>& rules() const;
  const Rule& body() const;

  std::size_t hash() const;
  friend bool operator==(const Rule& a, const Rule& b);
  friend std::strong_ordering operator<=>(const Rule& a, const Rule& b);

  explicit Rule(std::shared_ptr<const detail::RuleNode> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const detail::RuleNode> node_;
};

namespace detail {
struct RuleNode {
  Rule::Kind kind;
  std::string name;
  std::string op;
  std::vector<Term> args;
  std::vector<Term> operands;
  std::vector<Term> term;  // zero or one element
  std::vector<Rule> rules;
};
}  // namespace detail

std::set<std::string> freeVariables(const Term& t);
std::set<std::string> freeVariables(const Rule& r);

/// Capture-avoiding substitution of `replacement` for free occurrences of `var`.
Term substitute(const Term& t, const std::string& var, const Term& replacement);
Rule substitute(const Rule& r, const std::string& var, const Term& replacement);

/// Rebuilds a term with every literal value passed through `f`.
Term mapLiterals(const Term& t, const std::function<Value(const Value&)>& f);
Rule mapLiterals(const Rule& r, const std::function<Value(const Value&)>& f);

/// Function symbols applied anywhere in the term/rule (including assignment targets).
void collectSymbols(const Term& t, std::set<std::string>& out);
void collectSymbols(const Rule& r, std::set<std::string>& out);

}  // namespace rasm

// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/syntax.hpp"

#include <algorithm>
#include <optional>

#include "rasm/error.hpp"

namespace rasm {

namespace {

using detail::RuleNode;
using detail::TermNode;

Term makeTerm(TermNode n) { return Term(std::make_shared<const TermNode>(std::move(n))); }
Rule makeRule(RuleNode n) { return Rule(std::make_shared<const RuleNode>(std::move(n))); }

template <class T>
std::strong_ordering compareSeq(const std::vector<T>& a, const std::vector<T>& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

[[noreturn]] void wrongKind(const char* what) {
  throw Error(ErrorCode::InvalidArgument, std::string("node has no ") + what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Term

Term Term::var(std::string name) { return makeTerm({Kind::Var, std::move(name), {}, {}, {}}); }

Term Term::apply(std::string symbol, std::vector<Term> args) {
  return makeTerm({Kind::Apply, std::move(symbol), std::move(args), {}, {}});
}

Term Term::op(std::string name, std::vector<Term> args) {
  return makeTerm({Kind::Op, std::move(name), std::move(args), {}, {}});
}

Term Term::comprehension(Term head, std::vector<std::string> binders, Term guard) {
  return makeTerm({Kind::Comprehension, {}, {std::move(head), std::move(guard)}, std::move(binders), {}});
}

Term Term::literal(Value v) { return makeTerm({Kind::Literal, {}, {}, {}, std::move(v)}); }

Term::Kind Term::kind() const noexcept { return node_->kind; }

const std::string& Term::name() const {
  if (kind() == Kind::Literal || kind() == Kind::Comprehension) wrongKind("name");
  return node_->name;
}

const std::vector<Term>& Term::args() const {
  if (kind() != Kind::Apply && kind() != Kind::Op) wrongKind("arguments");
  return node_->args;
}

const Term& Term::head() const {
  if (kind() != Kind::Comprehension) wrongKind("head");
  return node_->args[0];
}

const Term& Term::guard() const {
  if (kind() != Kind::Comprehension) wrongKind("guard");
  return node_->args[1];
}

const std::vector<std::string>& Term::binders() const {
  if (kind() != Kind::Comprehension) wrongKind("binders");
  return node_->binders;
}

const Value& Term::value() const {
  if (kind() != Kind::Literal) wrongKind("literal value");
  return node_->literal;
}

std::size_t Term::hash() const {
  std::size_t h = hashCombine(static_cast<std::size_t>(kind()) + 17, std::hash<std::string>{}(node_->name));
  for (const Term& a : node_->args) h = hashCombine(h, a.hash());
  for (const auto& b : node_->binders) h = hashCombine(h, std::hash<std::string>{}(b));
  if (kind() == Kind::Literal) h = hashCombine(h, node_->literal.hash());
  return h;
}

bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = compareSeq(x.args, y.args); c != 0) return c;
  if (auto c = compareSeq(x.binders, y.binders); c != 0) return c;
  return x.literal <=> y.literal;
}

// ---------------------------------------------------------------------------
// Rule

Rule Rule::assign(std::string symbol, std::vector<Term> args, Term rhs) {
  return makeRule({Kind::Assign, std::move(symbol), {}, std::move(args), {}, {std::move(rhs)}, {}});
}

Rule Rule::partial(std::string symbol, std::vector<Term> args, std::string op,
                   std::vector<Term> operands) {
  return makeRule({Kind::Partial, std::move(symbol), std::move(op), std::move(args),
                   std::move(operands), {}, {}});
}

Rule Rule::ifThenElse(Term cond, Rule thenRule, Rule elseRule) {
  return makeRule({Kind::If, {}, {}, {}, {}, {std::move(cond)}, {std::move(thenRule), std::move(elseRule)}});
}

Rule Rule::par(std::vector<Rule> rules) {
  return makeRule({Kind::Par, {}, {}, {}, {}, {}, std::move(rules)});
}

Rule Rule::forall(std::string var, Term guard, Rule body) {
  return makeRule({Kind::Forall, std::move(var), {}, {}, {}, {std::move(guard)}, {std::move(body)}});
}

Rule Rule::let(std::string var, Term binding, Rule body) {
  return makeRule({Kind::Let, std::move(var), {}, {}, {}, {std::move(binding)}, {std::move(body)}});
}

Rule Rule::import(std::string var, Rule body) {
  return makeRule({Kind::Import, std::move(var), {}, {}, {}, {}, {std::move(body)}});
}

Rule::Kind Rule::kind() const noexcept { return node_->kind; }

const std::string& Rule::name() const {
  if (kind() == Kind::If || kind() == Kind::Par) wrongKind("name");
  return node_->name;
}

const std::string& Rule::opName() const {
  if (kind() != Kind::Partial) wrongKind("operator");
  return node_->op;
}

const std::vector<Term>& Rule::args() const {
  if (kind() != Kind::Assign && kind() != Kind::Partial) wrongKind("location arguments");
  return node_->args;
}

const std::vector<Term>& Rule::operands() const {
  if (kind() != Kind::Partial) wrongKind("operands");
  return node_->operands;
}

const Term& Rule::term() const {
  if (node_->term.empty()) wrongKind("term");
  return node_->term.front();
}

const std::vector<Rule>& Rule::rules() const { return node_->rules; }

const Rule& Rule::body() const {
  if (kind() != Kind::Forall && kind() != Kind::Let && kind() != Kind::Import) wrongKind("body");
  return node_->rules.front();
}

std::size_t Rule::hash() const {
  const RuleNode& n = *node_;
  std::size_t h = hashCombine(static_cast<std::size_t>(n.kind) + 31, std::hash<std::string>{}(n.name));
  h = hashCombine(h, std::hash<std::string>{}(n.op));
  for (const Term& t : n.args) h = hashCombine(h, t.hash());
  for (const Term& t : n.operands) h = hashCombine(h, t.hash());
  for (const Term& t : n.term) h = hashCombine(h, t.hash());
  for (const Rule& r : n.rules) h = hashCombine(h, r.hash());
  return hashCombine(h, n.rules.size());
}

bool operator==(const Rule& a, const Rule& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Rule& a, const Rule& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const RuleNode& x = *a.node_;
  const RuleNode& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.op <=> y.op; c != 0) return c;
  if (auto c = compareSeq(x.args, y.args); c != 0) return c;
  if (auto c = compareSeq(x.operands, y.operands); c != 0) return c;
  if (auto c = compareSeq(x.term, y.term); c != 0) return c;
  return compareSeq(x.rules, y.rules);
}

// ---------------------------------------------------------------------------
// Free variables and substitution

namespace {

void freeVars(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case Term::Kind::Apply:
    case Term::Kind::Op:
      for (const Term& a : t.args()) freeVars(a, bound, out);
      return;
    case Term::Kind::Comprehension: {
      std::set<std::string> inner = bound;
      inner.insert(t.binders().begin(), t.binders().end());
      freeVars(t.head(), inner, out);
      freeVars(t.guard(), inner, out);
      return;
    }
    case Term::Kind::Literal: return;
  }
}

void freeVars(const Rule& r, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (r.kind()) {
    case Rule::Kind::Assign:
      for (const Term& a : r.args()) freeVars(a, bound, out);
      freeVars(r.term(), bound, out);
      return;
    case Rule::Kind::Partial:
      for (const Term& a : r.args()) freeVars(a, bound, out);
      for (const Term& a : r.operands()) freeVars(a, bound, out);
      return;
    case Rule::Kind::If:
      freeVars(r.term(), bound, out);
      for (const Rule& s : r.rules()) freeVars(s, bound, out);
      return;
    case Rule::Kind::Par:
      for (const Rule& s : r.rules()) freeVars(s, bound, out);
      return;
    case Rule::Kind::Let:
      freeVars(r.term(), bound, out);
      [[fallthrough]];
    case Rule::Kind::Forall:
    case Rule::Kind::Import: {
      std::set<std::string> inner = bound;
      inner.insert(r.name());
      if (r.kind() == Rule::Kind::Forall) freeVars(r.term(), inner, out);
      freeVars(r.body(), inner, out);
      return;
    }
  }
}

std::string freshName(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

}  // namespace

std::set<std::string> freeVariables(const Term& t) {
  std::set<std::string> bound, out;
  freeVars(t, bound, out);
  return out;
}

std::set<std::string> freeVariables(const Rule& r) {
  std::set<std::string> bound, out;
  freeVars(r, bound, out);
  return out;
}

Term substitute(const Term& t, const std::string& var, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name() == var ? replacement : t;
    case Term::Kind::Literal: return t;
    case Term::Kind::Apply:
    case Term::Kind::Op: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(substitute(a, var, replacement));
      return t.kind() == Term::Kind::Apply ? Term::apply(t.name(), std::move(args))
                                           : Term::op(t.name(), std::move(args));
    }
    case Term::Kind::Comprehension: {
      const auto& binders = t.binders();
      if (std::find(binders.begin(), binders.end(), var) != binders.end()) return t;
      const auto replFree = freeVariables(replacement);
      Term head = t.head();
      Term guard = t.guard();
      std::vector<std::string> renamed = binders;
      for (auto& b : renamed) {
        if (!replFree.count(b)) continue;
        std::set<std::string> avoid = replFree;
        auto fv = freeVariables(t);
        avoid.insert(fv.begin(), fv.end());
        avoid.insert(renamed.begin(), renamed.end());
        avoid.insert(var);
        std::string fresh = freshName(b, avoid);
        head = substitute(head, b, Term::var(fresh));
        guard = substitute(guard, b, Term::var(fresh));
        b = fresh;
      }
      return Term::comprehension(substitute(head, var, replacement), std::move(renamed),
                                 substitute(guard, var, replacement));
    }
  }
  return t;
}

namespace {

/// Substitutes under a binder, renaming the binder if it would capture a free
/// variable of the replacement.
std::pair<std::string, Rule> substituteUnderBinder(const std::string& binder, const Rule& body,
                                                   std::optional<Term>& guard, const std::string& var,
                                                   const Term& replacement) {
  if (binder == var) return {binder, body};
  std::string name = binder;
  Rule b = body;
  const auto replFree = freeVariables(replacement);
  if (replFree.count(binder)) {
    std::set<std::string> avoid = replFree;
    auto fv = freeVariables(body);
    avoid.insert(fv.begin(), fv.end());
    if (guard) {
      auto gv = freeVariables(*guard);
      avoid.insert(gv.begin(), gv.end());
    }
    avoid.insert(var);
    name = freshName(binder, avoid);
    b = substitute(b, binder, Term::var(name));
    if (guard) guard = substitute(*guard, binder, Term::var(name));
  }
  if (guard) guard = substitute(*guard, var, replacement);
  return {name, substitute(b, var, replacement)};
}

std::vector<Term> substituteAll(const std::vector<Term>& ts, const std::string& var, const Term& repl) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const Term& t : ts) out.push_back(substitute(t, var, repl));
  return out;
}

}  // namespace

Rule substitute(const Rule& r, const std::string& var, const Term& replacement) {
  switch (r.kind()) {
    case Rule::Kind::Assign:
      return Rule::assign(r.name(), substituteAll(r.args(), var, replacement),
                          substitute(r.term(), var, replacement));
    case Rule::Kind::Partial:
      return Rule::partial(r.name(), substituteAll(r.args(), var, replacement), r.opName(),
                           substituteAll(r.operands(), var, replacement));
    case Rule::Kind::If:
      return Rule::ifThenElse(substitute(r.term(), var, replacement),
                              substitute(r.rules()[0], var, replacement),
                              substitute(r.rules()[1], var, replacement));
    case Rule::Kind::Par: {
      std::vector<Rule> rs;
      rs.reserve(r.rules().size());
      for (const Rule& s : r.rules()) rs.push_back(substitute(s, var, replacement));
      return Rule::par(std::move(rs));
    }
    case Rule::Kind::Forall: {
      std::optional<Term> guard = r.term();
      auto [name, body] = substituteUnderBinder(r.name(), r.body(), guard, var, replacement);
      if (r.name() == var) return r;
      return Rule::forall(name, *guard, body);
    }
    case Rule::Kind::Let: {
      Term binding = substitute(r.term(), var, replacement);
      std::optional<Term> none;
      auto [name, body] = substituteUnderBinder(r.name(), r.body(), none, var, replacement);
      return Rule::let(name, binding, body);
    }
    case Rule::Kind::Import: {
      std::optional<Term> none;
      auto [name, body] = substituteUnderBinder(r.name(), r.body(), none, var, replacement);
      return Rule::import(name, body);
    }
  }
  return r;
}

Term mapLiterals(const Term& t, const std::function<Value(const Value&)>& f) {
  switch (t.kind()) {
    case Term::Kind::Var: return t;
    case Term::Kind::Literal: return Term::literal(f(t.value()));
    case Term::Kind::Apply:
    case Term::Kind::Op: {
      std::vector<Term> args;
      for (const Term& a : t.args()) args.push_back(mapLiterals(a, f));
      return t.kind() == Term::Kind::Apply ? Term::apply(t.name(), std::move(args))
                                           : Term::op(t.name(), std::move(args));
    }
    case Term::Kind::Comprehension:
      return Term::comprehension(mapLiterals(t.head(), f), t.binders(), mapLiterals(t.guard(), f));
  }
  return t;
}

Rule mapLiterals(const Rule& r, const std::function<Value(const Value&)>& f) {
  auto all = [&](const std::vector<Term>& ts) {
    std::vector<Term> out;
    for (const Term& t : ts) out.push_back(mapLiterals(t, f));
    return out;
  };
  switch (r.kind()) {
    case Rule::Kind::Assign: return Rule::assign(r.name(), all(r.args()), mapLiterals(r.term(), f));
    case Rule::Kind::Partial: return Rule::partial(r.name(), all(r.args()), r.opName(), all(r.operands()));
    case Rule::Kind::If:
      return Rule::ifThenElse(mapLiterals(r.term(), f), mapLiterals(r.rules()[0], f),
                              mapLiterals(r.rules()[1], f));
    case Rule::Kind::Par: {
      std::vector<Rule> rs;
      for (const Rule& s : r.rules()) rs.push_back(mapLiterals(s, f));
      return Rule::par(std::move(rs));
    }
    case Rule::Kind::Forall: return Rule::forall(r.name(), mapLiterals(r.term(), f), mapLiterals(r.body(), f));
    case Rule::Kind::Let: return Rule::let(r.name(), mapLiterals(r.term(), f), mapLiterals(r.body(), f));
    case Rule::Kind::Import: return Rule::import(r.name(), mapLiterals(r.body(), f));
  }
  return r;
}

void collectSymbols(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Apply:
      out.insert(t.name());
      [[fallthrough]];
    case Term::Kind::Op:
      for (const Term& a : t.args()) collectSymbols(a, out);
      return;
    case Term::Kind::Comprehension:
      collectSymbols(t.head(), out);
      collectSymbols(t.guard(), out);
      return;
    default: return;
  }
}

void collectSymbols(const Rule& r, std::set<std::string>& out) {
  switch (r.kind()) {
    case Rule::Kind::Assign:
      out.insert(r.name());
      for (const Term& a : r.args()) collectSymbols(a, out);
      collectSymbols(r.term(), out);
      return;
    case Rule::Kind::Partial:
      out.insert(r.name());
      for (const Term& a : r.args()) collectSymbols(a, out);
      for (const Term& a : r.operands()) collectSymbols(a, out);
      return;
    case Rule::Kind::If:
    case Rule::Kind::Forall:
    case Rule::Kind::Let:
      collectSymbols(r.term(), out);
      [[fallthrough]];
    default:
      for (const Rule& s : r.rules()) collectSymbols(s, out);
      return;
  }
}

}  // namespace rasm

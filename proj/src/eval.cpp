// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/eval.hpp"

#include "rasm/error.hpp"

namespace rasm {

Evaluator::Evaluator(const State& s, const OperatorRegistry& ops)
    : Evaluator(s, s.signature(), ops) {}

Evaluator::Evaluator(const State& s, Signature sig, const OperatorRegistry& ops)
    : state_(s), signature_(std::move(sig)), ops_(ops), cursor_(s.reserve()) {}

const std::vector<Value>& Evaluator::domain() {
  if (!domain_) domain_ = activeDomain(state_);
  return *domain_;
}

Value Evaluator::freshAtom() {
  if (!taken_) {
    auto atoms = atomsOf(state_);
    taken_.emplace(atoms.begin(), atoms.end());
    for (const auto& f : signature_.symbols()) taken_->insert(f.name);
  }
  for (;;) {
    std::string name = cursor_.ns + std::to_string(cursor_.next++);
    if (taken_->insert(name).second) {
      imported_.insert(name);
      return Value::atom(std::move(name));
    }
  }
}

namespace {

bool mentionsAny(const Value& v, const std::set<std::string>& atoms) {
  if (v.isAtom()) return atoms.count(v.atomName()) > 0;
  if (v.isTuple() || v.isMultiset()) {
    for (const Value& x : v.items()) {
      if (mentionsAny(x, atoms)) return true;
    }
  }
  return false;
}

}  // namespace

void Evaluator::checkLocation(const Location& loc) const {
  if (imported_.empty()) return;
  for (const Value& a : loc.args) {
    if (mentionsAny(a, imported_)) {
      throw Error(ErrorCode::ImportBoundLocation,
                  "imported atom used as an argument of " + loc.symbol);
    }
  }
}

Value Evaluator::term(const Env& env, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.name());
      if (it == env.end()) throw Error(ErrorCode::UnboundVariable, t.name());
      return it->second;
    }
    case Term::Kind::Literal: return t.value();
    case Term::Kind::Apply: {
      const FunctionSymbol* f = signature_.find(t.name());
      if (!f) throw Error(ErrorCode::UnknownSymbol, t.name());
      if (f->arity != t.args().size()) {
        throw Error(ErrorCode::ArityMismatch, t.name() + " expects " + std::to_string(f->arity) +
                                                  " arguments, got " +
                                                  std::to_string(t.args().size()));
      }
      Location loc{t.name(), {}};
      bool strictUndef = false;
      for (const Term& a : t.args()) {
        loc.args.push_back(term(env, a));
        if (loc.args.back().isUndef()) strictUndef = true;
      }
      if (strictUndef) return Value::undef();
      return state_.get(loc);
    }
    case Term::Kind::Op: {
      std::vector<Value> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(term(env, a));
      return applyBackgroundOp(t.name(), args);
    }
    case Term::Kind::Comprehension: return comprehension(env, t);
  }
  return Value::undef();
}

template <typename F>
void Evaluator::forEachAssignment(const Env& env, const std::vector<std::string>& binders,
                                  F&& f) {
  const std::vector<Value>& dom = domain();
  Env inner = env;
  std::vector<std::size_t> idx(binders.size(), 0);
  if (!binders.empty() && dom.empty()) return;
  for (;;) {
    for (std::size_t i = 0; i < binders.size(); ++i) inner[binders[i]] = dom[idx[i]];
    f(static_cast<const Env&>(inner));
    std::size_t k = binders.size();
    while (k > 0) {
      if (++idx[k - 1] < dom.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) return;
  }
}

namespace {

// true: include, false: exclude.
bool admits(const Value& guard) {
  if (guard.isTrue()) return true;
  if (guard.isFalse() || guard.isUndef()) return false;
  throw Error(ErrorCode::NonBooleanGuard, "guard evaluated to a " +
                                              std::string(to_string(guard.kind())));
}

}  // namespace

Value Evaluator::comprehension(const Env& env, const Term& mc) {
  std::vector<Value> items;
  forEachAssignment(env, mc.binders(), [&](const Env& inner) {
    if (admits(term(inner, mc.guard()))) items.push_back(term(inner, mc.head()));
  });
  return Value::multiset(std::move(items));
}

UpdateMultiset Evaluator::rule(const Env& env, const Rule& r) {
  UpdateMultiset out;
  switch (r.kind()) {
    case Rule::Kind::Assign:
    case Rule::Kind::Partial: {
      const FunctionSymbol* f = signature_.find(r.name());
      if (!f) throw Error(ErrorCode::UnknownSymbol, r.name());
      if (f->arity != r.args().size()) {
        throw Error(ErrorCode::ArityMismatch, r.name() + " expects " + std::to_string(f->arity) +
                                                  " arguments, got " +
                                                  std::to_string(r.args().size()));
      }
      Location loc{r.name(), {}};
      for (const Term& a : r.args()) loc.args.push_back(term(env, a));
      checkLocation(loc);
      if (r.kind() == Rule::Kind::Assign) {
        out.add(Update{std::move(loc), term(env, r.term())});
      } else {
        if (!ops_.find(r.opName())) throw Error(ErrorCode::UnknownOperator, r.opName());
        std::vector<Value> operands;
        for (const Term& t : r.operands()) operands.push_back(term(env, t));
        out.add(SharedUpdate{std::move(loc), r.opName(), std::move(operands)});
      }
      return out;
    }
    case Rule::Kind::If: {
      Value c = term(env, r.term());
      if (c.isUndef()) throw Error(ErrorCode::ConditionUndef, "IF condition is undef");
      if (!c.isBool()) {
        throw Error(ErrorCode::NonBooleanGuard,
                    "IF condition evaluated to a " + std::string(to_string(c.kind())));
      }
      return rule(env, r.rules()[c.asBool() ? 0 : 1]);
    }
    case Rule::Kind::Par:
      for (const Rule& sub : r.rules()) out.add(rule(env, sub));
      return out;
    case Rule::Kind::Forall:
      forEachAssignment(env, {r.name()}, [&](const Env& inner) {
        if (admits(term(inner, r.term()))) out.add(rule(inner, r.body()));
      });
      return out;
    case Rule::Kind::Let: return rule(env, substitute(r.body(), r.name(), r.term()));
    case Rule::Kind::Import: {
      Env inner = env;
      inner[r.name()] = freshAtom();
      return rule(inner, r.body());
    }
  }
  return out;
}

Value evalTerm(const State& s, const Env& env, const Term& t) { return Evaluator(s).term(env, t); }

Value evalComprehension(const State& s, const Env& env, const Term& mc) {
  if (mc.kind() != Term::Kind::Comprehension) {
    throw Error(ErrorCode::InvalidArgument, "not a multiset comprehension");
  }
  return Evaluator(s).comprehension(env, mc);
}

UpdateMultiset evalRule(const State& s, const Env& env, const Rule& r, ReserveCursor* cursor,
                        const OperatorRegistry& ops) {
  Evaluator ev(s, ops);
  UpdateMultiset um = ev.rule(env, r);
  if (cursor) *cursor = ev.cursor();
  return um;
}

}  // namespace rasm

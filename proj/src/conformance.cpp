// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/conformance.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "rasm/error.hpp"
#include "rasm/eval.hpp"
#include "rasm/reflection.hpp"
#include "rasm/text.hpp"

namespace rasm {

std::string formatReport(const CheckReport& r) {
  std::string out = "check " + r.name + " instances=" + std::to_string(r.instances) +
                    " violations=" + std::to_string(r.violations.size()) + "\n";
  for (const Violation& v : r.violations) {
    out += "violation " + v.description + "\n";
    if (!v.witness.empty()) {
      std::size_t start = 0;
      while (start < v.witness.size()) {
        std::size_t end = v.witness.find('\n', start);
        if (end == std::string::npos) end = v.witness.size();
        out += "  witness " + v.witness.substr(start, end - start) + "\n";
        start = end + 1;
      }
    }
  }
  for (const std::string& n : r.notes) out += "note " + n + "\n";
  return out;
}

State defaultStep(const State& s) { return step(s).next; }

std::vector<std::string> movableAtoms(const State& s) {
  std::vector<std::string> out;
  for (const std::string& a : atomsOf(s)) {
    if (isProgramLabel(a) || s.signature().contains(a) || a == kPgm) continue;
    if (OperatorRegistry::standard().find(a) || isBackgroundOp(a)) continue;
    if (!a.empty() && a[0] == '$') continue;
    out.push_back(a);
  }
  return out;
}

AtomRenaming randomRenaming(const State& s, std::uint64_t seed) {
  const std::vector<std::string> movable = movableAtoms(s);
  const std::vector<std::string> all = atomsOf(s);
  const std::set<std::string> present(all.begin(), all.end());
  std::vector<std::string> targets = movable;
  for (std::size_t k = 0; targets.size() < 2 * movable.size(); ++k) {
    std::string fresh = "iso" + std::to_string(k);
    if (!present.count(fresh)) targets.push_back(std::move(fresh));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(targets.begin(), targets.end(), rng);
  AtomRenaming pi;
  for (const std::string& a : all) pi[a] = a;
  for (std::size_t i = 0; i < movable.size(); ++i) pi[movable[i]] = targets[i];
  return pi;
}

namespace {

// π extended by the identity on atoms that only the step introduced.
AtomRenaming extendTo(const AtomRenaming& pi, const State& s) {
  AtomRenaming out = pi;
  for (const std::string& a : atomsOf(s)) out.emplace(a, a);
  return out;
}

std::string describePi(const AtomRenaming& pi) {
  std::string out = "pi:";
  for (const auto& [from, to] : pi) {
    if (from != to) out += " " + from + "->" + to;
  }
  return out;
}

}  // namespace

CheckReport checkIsomorphismClosure(const State& s, std::size_t trials, std::uint64_t seed,
                                    const StepFunction& stepFn) {
  CheckReport r;
  r.name = "isomorphism-closure";
  if (movableAtoms(s).empty()) r.notes.push_back("no movable atoms; every bijection is trivial");
  std::optional<State> next;
  std::optional<ErrorCode> err;
  try {
    next = stepFn(s);
  } catch (const Error& e) {
    err = e.code();
  }
  for (std::size_t i = 0; i < trials; ++i) {
    const AtomRenaming pi = randomRenaming(s, seed + i);
    ++r.instances;
    try {
      State renamedNext = stepFn(renameState(s, pi));
      if (!next) {
        r.violations.push_back({"step fails on S but not on pi(S)", describePi(pi)});
        continue;
      }
      State expected = renameState(*next, extendTo(pi, *next));
      if (!(expected == renamedNext)) {
        r.violations.push_back({"step(pi(S)) != pi(step(S))",
                                describePi(pi) + "\nexpected:\n" + printState(expected) +
                                    "actual:\n" + printState(renamedNext)});
      }
    } catch (const Error& e) {
      if (!err || *err != e.code()) {
        r.violations.push_back({"step fails on pi(S) with " + std::string(to_string(e.code())),
                                describePi(pi)});
      }
    }
  }
  return r;
}

namespace {

std::string outcome(const std::function<std::string()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    return "error " + std::string(to_string(e.code()));
  }
}

std::string multisetText(const UpdateMultiset& um) {
  std::string out;
  for (const UpdateItem& item : um.sorted()) {
    if (const auto* u = std::get_if<Update>(&item)) {
      out += printUpdate(*u) + "\n";
    } else {
      const auto& su = std::get<SharedUpdate>(item);
      out += printLocation(su.loc) + " <<= " + su.op + "(";
      for (std::size_t i = 0; i < su.args.size(); ++i) {
        out += (i ? ", " : "") + printValue(su.args[i]);
      }
      out += ")\n";
    }
  }
  return out;
}

}  // namespace

CheckReport checkBoundedExploration(const State& s1, const State& s2) {
  CheckReport r;
  r.name = "bounded-exploration";
  const Value& p1 = s1.get(std::string(kPgm));
  if (!(p1 == s2.get(std::string(kPgm)))) {
    r.notes.push_back("precondition failed: pgm differs");
    return r;
  }
  if (!(s1.signature() == s2.signature())) {
    r.notes.push_back("precondition failed: signatures differ");
    return r;
  }
  if (!p1.isTree()) {
    r.notes.push_back("precondition failed: pgm is not a tree");
    return r;
  }
  const Program prog = raiseProgram(p1.asTree());
  const Signature sig = s1.signature().unionWith(prog.signature);
  const std::vector<Term> betas = betaOfRule(prog.rule);
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const Term closed = closeBetaTerm(betas[i]);
    auto eval = [&](const State& s) {
      return outcome([&] { return printValue(Evaluator(s, sig).term({}, closed)); });
    };
    if (eval(s1) != eval(s2)) {
      r.notes.push_back("precondition failed: beta element " + std::to_string(i) + " differs");
      return r;
    }
  }
  ++r.instances;
  auto run = [&](const State& s) {
    return outcome([&] { return multisetText(Evaluator(s, sig).rule({}, prog.rule)); });
  };
  const std::string m1 = run(s1);
  const std::string m2 = run(s2);
  if (m1 != m2) {
    r.violations.push_back({"update multisets differ on agreeing states",
                            "S1:\n" + printState(s1) + "S2:\n" + printState(s2) + "D1:\n" + m1 +
                                "D2:\n" + m2});
  }
  return r;
}

CheckReport checkSignatureMonotonicity(const std::vector<State>& run) {
  CheckReport r;
  r.name = "signature-monotonicity";
  for (std::size_t i = 1; i < run.size(); ++i) {
    ++r.instances;
    if (!run[i - 1].signature().isSubsetOf(run[i].signature())) {
      r.violations.push_back({"signature shrinks at step " + std::to_string(i),
                              "before: " + printSignature(run[i - 1].signature()) +
                                  "\nafter: " + printSignature(run[i].signature())});
    }
  }
  return r;
}

CheckReport checkInitialAgreement(const std::vector<State>& inits) {
  CheckReport r;
  r.name = "initial-agreement";
  for (std::size_t i = 1; i < inits.size(); ++i) {
    ++r.instances;
    if (!(inits[0].get(std::string(kPgm)) == inits[i].get(std::string(kPgm)))) {
      r.violations.push_back({"initial state " + std::to_string(i) + " has a different pgm",
                              "first: " + printValue(inits[0].get(std::string(kPgm))) +
                                  "\nother: " + printValue(inits[i].get(std::string(kPgm)))});
    }
  }
  return r;
}

// A direct reading of the update-set semantics: rules denote sets of
// (location, value) pairs, shared updates are folded in every order.
namespace {

using Pairs = std::vector<std::pair<Location, Value>>;
using Shared = std::vector<SharedUpdate>;

// Variables bind either a value or an unevaluated let term with its scope.
struct Binding;
using NEnv = std::map<std::string, std::shared_ptr<const Binding>>;
struct Binding {
  std::optional<Value> value;
  std::optional<Term> term;
  NEnv scope;
};

std::shared_ptr<const Binding> bound(Value v) {
  return std::make_shared<const Binding>(Binding{std::move(v), std::nullopt, {}});
}

class Naive {
 public:
  explicit Naive(const State& s) : s_(s) {
    std::set<Value> dom;
    std::set<std::string> atoms;
    for (const auto& [loc, v] : s.bindings()) {
      for (const Value& a : loc.args) gather(a, dom, atoms);
      gather(v, dom, atoms);
    }
    for (const Value& a : s.universe()) gather(a, dom, atoms);
    dom_.assign(dom.begin(), dom.end());
    taken_ = atoms;
    for (const FunctionSymbol& f : s.signature().symbols()) taken_.insert(f.name);
    ns_ = s.reserve().ns;
    next_ = s.reserve().next;
  }

  Value term(const NEnv& env, const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = env.find(t.name());
        if (it == env.end()) throw Error(ErrorCode::UnboundVariable, t.name());
        if (it->second->value) return *it->second->value;
        return term(it->second->scope, *it->second->term);
      }
      case Term::Kind::Literal: return t.value();
      case Term::Kind::Apply: {
        const FunctionSymbol* f = s_.signature().find(t.name());
        if (!f) throw Error(ErrorCode::UnknownSymbol, t.name());
        if (f->arity != t.args().size()) throw Error(ErrorCode::ArityMismatch, t.name());
        std::vector<Value> args;
        for (const Term& a : t.args()) args.push_back(term(env, a));
        for (const Value& a : args) {
          if (a.isUndef()) return Value::undef();
        }
        return s_.get(Location{t.name(), args});
      }
      case Term::Kind::Op: {
        std::vector<Value> args;
        for (const Term& a : t.args()) args.push_back(term(env, a));
        return op(t.name(), args);
      }
      case Term::Kind::Comprehension: {
        std::vector<Value> items;
        assignments(env, t.binders(), 0, [&](const NEnv& e) {
          Value g = term(e, t.guard());
          if (!g.isUndef() && !g.isBool()) throw Error(ErrorCode::NonBooleanGuard, "guard");
          if (g.isTrue()) items.push_back(term(e, t.head()));
        });
        return Value::multiset(std::move(items));
      }
    }
    return Value::undef();
  }

  void rule(const NEnv& env, const Rule& r, Pairs& pairs, Shared& shared) {
    switch (r.kind()) {
      case Rule::Kind::Assign:
      case Rule::Kind::Partial: {
        const FunctionSymbol* f = s_.signature().find(r.name());
        if (!f) throw Error(ErrorCode::UnknownSymbol, r.name());
        if (f->arity != r.args().size()) throw Error(ErrorCode::ArityMismatch, r.name());
        Location loc{r.name(), {}};
        for (const Term& a : r.args()) loc.args.push_back(term(env, a));
        for (const Value& a : loc.args) {
          if (mentionsImported(a)) throw Error(ErrorCode::ImportBoundLocation, r.name());
        }
        if (r.kind() == Rule::Kind::Assign) {
          pairs.emplace_back(std::move(loc), term(env, r.term()));
        } else {
          if (!knownShared(r.opName())) throw Error(ErrorCode::UnknownOperator, r.opName());
          std::vector<Value> operands;
          for (const Term& t : r.operands()) operands.push_back(term(env, t));
          shared.push_back(SharedUpdate{std::move(loc), r.opName(), std::move(operands)});
        }
        return;
      }
      case Rule::Kind::If: {
        Value c = term(env, r.term());
        if (c.isUndef()) throw Error(ErrorCode::ConditionUndef, "condition");
        if (!c.isBool()) throw Error(ErrorCode::NonBooleanGuard, "condition");
        rule(env, r.rules()[c.isTrue() ? 0 : 1], pairs, shared);
        return;
      }
      case Rule::Kind::Par:
        for (const Rule& sub : r.rules()) rule(env, sub, pairs, shared);
        return;
      case Rule::Kind::Forall:
        assignments(env, {r.name()}, 0, [&](const NEnv& e) {
          Value g = term(e, r.term());
          if (!g.isUndef() && !g.isBool()) throw Error(ErrorCode::NonBooleanGuard, "guard");
          if (g.isTrue()) rule(e, r.body(), pairs, shared);
        });
        return;
      case Rule::Kind::Let: {
        NEnv e = env;
        e[r.name()] = std::make_shared<const Binding>(Binding{std::nullopt, r.term(), env});
        rule(e, r.body(), pairs, shared);
        return;
      }
      case Rule::Kind::Import: {
        NEnv e = env;
        e[r.name()] = bound(fresh());
        rule(e, r.body(), pairs, shared);
        return;
      }
    }
  }

 private:
  static void gather(const Value& v, std::set<Value>& dom, std::set<std::string>& atoms) {
    if (v.isUndef()) return;
    dom.insert(v);
    if (v.isAtom()) atoms.insert(v.atomName());
    if (v.isTuple() || v.isMultiset()) {
      for (const Value& x : v.items()) gather(x, dom, atoms);
    }
    if (v.isTree() || v.isContext()) {
      const detail::TreeRep& rep = v.isTree() ? v.asTree().rep() : v.asContext().rep();
      for (const auto& n : rep.nodes) {
        if (n.value) gather(*n.value, dom, atoms);
      }
    }
  }

  template <typename F>
  void assignments(const NEnv& env, const std::vector<std::string>& vars, std::size_t i, F&& f) {
    if (i == vars.size()) {
      f(env);
      return;
    }
    for (const Value& d : dom_) {
      NEnv e = env;
      e[vars[i]] = bound(d);
      assignments(e, vars, i + 1, f);
    }
  }

  Value fresh() {
    for (;;) {
      std::string name = ns_ + std::to_string(next_++);
      if (taken_.insert(name).second) {
        imported_.insert(name);
        return Value::atom(name);
      }
    }
  }

  bool mentionsImported(const Value& v) const {
    if (v.isAtom()) return imported_.count(v.atomName()) > 0;
    if (v.isTuple() || v.isMultiset()) {
      for (const Value& x : v.items()) {
        if (mentionsImported(x)) return true;
      }
    }
    return false;
  }

  static bool knownShared(const std::string& name) {
    return name == "add" || name == "max" || name == "min" || name == "union" ||
           name == "append";
  }

  static Value op(const std::string& name, const std::vector<Value>& a) {
    auto nat2 = [&](auto f) -> Value {
      if (a.size() != 2) throw Error(ErrorCode::ArityMismatch, name);
      if (!a[0].isNat() || !a[1].isNat()) return Value::undef();
      return f(a[0].asNat(), a[1].asNat());
    };
    if (name == "=") return Value::boolean(a.at(0) == a.at(1));
    if (name == "!=") return Value::boolean(!(a.at(0) == a.at(1)));
    if (name == "and" || name == "or") {
      const bool isAnd = name == "and";
      bool unknown = false;
      for (const Value& v : a) {
        if (!v.isBool()) unknown = true;
        else if (v.asBool() != isAnd) return Value::boolean(!isAnd);
      }
      return unknown ? Value::undef() : Value::boolean(isAnd);
    }
    if (name == "not") return a.at(0).isBool() ? Value::boolean(!a[0].asBool()) : Value::undef();
    if (name == "+") return nat2([](auto x, auto y) { return Value::nat(x + y); });
    if (name == "-") return nat2([](auto x, auto y) { return Value::nat(x > y ? x - y : 0); });
    if (name == "*") return nat2([](auto x, auto y) { return Value::nat(x * y); });
    if (name == "<") return nat2([](auto x, auto y) { return Value::boolean(x < y); });
    if (name == "<=") return nat2([](auto x, auto y) { return Value::boolean(x <= y); });
    if (name == ">") return nat2([](auto x, auto y) { return Value::boolean(x > y); });
    if (name == ">=") return nat2([](auto x, auto y) { return Value::boolean(x >= y); });
    if (name == "tuple") return Value::tuple(a);
    if (name == "multiset") return Value::multiset(a);
    throw Error(ErrorCode::UnknownOperator, name);
  }

  const State& s_;
  std::vector<Value> dom_;
  std::set<std::string> taken_;
  std::set<std::string> imported_;
  std::string ns_;
  std::uint64_t next_ = 0;
};

std::optional<Value> naiveFold(const Value& current, const SharedUpdate& u) {
  const std::string& op = u.op;
  if (op == "add" || op == "max" || op == "min") {
    if (u.args.empty() || (!current.isUndef() && !current.isNat())) return std::nullopt;
    std::optional<std::uint64_t> acc;
    if (current.isNat()) acc = current.asNat();
    for (const Value& v : u.args) {
      if (!v.isNat()) return std::nullopt;
      const std::uint64_t x = v.asNat();
      if (!acc) acc = x;
      else if (op == "add") *acc += x;
      else if (op == "max") acc = std::max(*acc, x);
      else acc = std::min(*acc, x);
    }
    return Value::nat(*acc);
  }
  if (op == "union" || op == "append") {
    const bool bag = op == "union";
    std::vector<Value> items;
    if (!current.isUndef()) {
      if (bag ? !current.isMultiset() : !current.isTuple()) return std::nullopt;
      items = current.items();
    }
    for (const Value& v : u.args) {
      if (bag) {
        if (!v.isMultiset()) return std::nullopt;
        items.insert(items.end(), v.items().begin(), v.items().end());
      } else {
        items.push_back(v);
      }
    }
    return bag ? Value::multiset(std::move(items)) : Value::tuple(std::move(items));
  }
  return std::nullopt;
}

// Folds in every order; the group is order independent iff all results agree.
std::optional<Value> naiveGroup(const Value& current, std::vector<SharedUpdate> group) {
  std::sort(group.begin(), group.end());
  std::optional<Value> result;
  do {
    std::optional<Value> v = current;
    for (const SharedUpdate& u : group) {
      v = naiveFold(*v, u);
      if (!v) return std::nullopt;
    }
    if (!result) result = v;
    else if (!(*result == *v)) return std::nullopt;
  } while (std::next_permutation(group.begin(), group.end()));
  return result;
}

}  // namespace

std::optional<std::map<Location, Value>> naiveUpdateSet(const State& s, const Rule& r) {
  Naive n(s);
  Pairs pairs;
  Shared shared;
  n.rule({}, r, pairs, shared);
  std::map<Location, std::set<Value>> plain;
  for (auto& [loc, v] : pairs) plain[loc].insert(v);
  std::map<Location, std::vector<SharedUpdate>> groups;
  for (SharedUpdate& u : shared) groups[u.loc].push_back(u);
  std::map<Location, Value> out;
  for (const auto& [loc, vs] : plain) {
    if (vs.size() != 1 || groups.count(loc)) return std::nullopt;
    out[loc] = *vs.begin();
  }
  for (const auto& [loc, g] : groups) {
    auto v = naiveGroup(s.get(loc), g);
    if (!v) return std::nullopt;
    out[loc] = *v;
  }
  return out;
}

CheckReport checkNaiveEquivalence(const State& s, const Rule& r) {
  CheckReport rep;
  rep.name = "naive-equivalence";
  ++rep.instances;
  auto runtime = outcome([&] {
    UpdateSet u = collapse(s, evalRule(s, {}, r));
    if (!u.consistent) return std::string("inconsistent");
    std::string out;
    for (const auto& [loc, v] : u.updates) out += printLocation(loc) + " := " + printValue(v) + "\n";
    return out;
  });
  auto naive = outcome([&] {
    auto u = naiveUpdateSet(s, r);
    if (!u) return std::string("inconsistent");
    std::string out;
    for (const auto& [loc, v] : *u) out += printLocation(loc) + " := " + printValue(v) + "\n";
    return out;
  });
  if (runtime != naive) {
    rep.violations.push_back({"update sets differ", "state:\n" + printState(s) + "rule:\n" +
                                                        printRule(r) + "\nruntime:\n" + runtime +
                                                        "naive:\n" + naive});
  }
  return rep;
}

}  // namespace rasm

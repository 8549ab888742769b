// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/state.hpp"

#include <algorithm>
#include <set>

#include "rasm/error.hpp"
#include "rasm/reflection.hpp"
#include "rasm/syntax.hpp"
#include "rasm/tree.hpp"

namespace rasm {

std::string_view to_string(SymbolKind kind) noexcept {
  switch (kind) {
    case SymbolKind::Dynamic: return "dynamic";
    case SymbolKind::Static: return "static";
    case SymbolKind::Relational: return "relational";
  }
  return "?";
}

Signature::Signature(std::vector<FunctionSymbol> symbols) {
  for (const auto& f : symbols) add(f);
}

void Signature::add(const FunctionSymbol& f) {
  auto [it, inserted] = symbols_.emplace(f.name, f);
  if (!inserted && it->second.arity != f.arity) {
    throw Error(ErrorCode::ArityMismatch, "symbol " + f.name + " declared with arities " +
                                              std::to_string(it->second.arity) + " and " +
                                              std::to_string(f.arity));
  }
}

const FunctionSymbol* Signature::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

bool Signature::isSubsetOf(const Signature& other) const {
  return std::all_of(symbols_.begin(), symbols_.end(), [&](const auto& kv) {
    const FunctionSymbol* g = other.find(kv.first);
    return g && g->arity == kv.second.arity;
  });
}

Signature Signature::unionWith(const Signature& other) const {
  Signature out = *this;
  for (const auto& [name, f] : other.symbols_) {
    if (!out.find(name)) out.add(f);
    else if (out.find(name)->arity != f.arity) out.add(f);  // throws
  }
  return out;
}

std::vector<FunctionSymbol> Signature::symbols() const {
  std::vector<FunctionSymbol> out;
  out.reserve(symbols_.size());
  for (const auto& kv : symbols_) out.push_back(kv.second);
  return out;
}

std::strong_ordering operator<=>(const Location& a, const Location& b) {
  if (auto c = a.symbol <=> b.symbol; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

const Value& State::get(const Location& loc) const {
  static const Value undef;
  auto it = interp_.find(loc);
  return it == interp_.end() ? undef : it->second;
}

void State::set(const Location& loc, Value v) {
  if (const FunctionSymbol* f = signature_.find(loc.symbol); f && f->arity != loc.args.size()) {
    throw Error(ErrorCode::ArityMismatch, loc.symbol + " has arity " + std::to_string(f->arity) +
                                              ", location has " + std::to_string(loc.args.size()) +
                                              " arguments");
  }
  if (v.isUndef()) {
    interp_.erase(loc);
  } else {
    interp_.insert_or_assign(loc, std::move(v));
  }
}

void State::addUniverseAtom(Value atom) {
  if (!atom.isAtom()) throw Error(ErrorCode::InvalidArgument, "universe entries must be atoms");
  if (std::find(universe_.begin(), universe_.end(), atom) == universe_.end()) {
    universe_.push_back(std::move(atom));
    std::sort(universe_.begin(), universe_.end());
  }
}

namespace {

void collectValues(const Value& v, std::set<Value>& out) {
  if (v.isUndef()) return;
  if (!out.insert(v).second) return;
  switch (v.kind()) {
    case Value::Kind::Tuple:
    case Value::Kind::Multiset:
      for (const Value& item : v.items()) collectValues(item, out);
      break;
    case Value::Kind::Tree:
    case Value::Kind::Context: {
      const detail::TreeRep& rep = v.isTree() ? v.asTree().rep() : v.asContext().rep();
      for (const auto& n : rep.nodes) {
        if (n.value) collectValues(*n.value, out);
      }
      break;
    }
    default: break;
  }
}

void collectAtoms(const Value& v, std::set<std::string>& out);

void collectAtoms(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Literal: collectAtoms(t.value(), out); return;
    case Term::Kind::Apply:
    case Term::Kind::Op:
      for (const Term& a : t.args()) collectAtoms(a, out);
      return;
    case Term::Kind::Comprehension:
      collectAtoms(t.head(), out);
      collectAtoms(t.guard(), out);
      return;
    case Term::Kind::Var: return;
  }
}

void collectAtoms(const Value& v, std::set<std::string>& out) {
  switch (v.kind()) {
    case Value::Kind::Atom: out.insert(v.atomName()); return;
    case Value::Kind::Tuple:
    case Value::Kind::Multiset:
      for (const Value& item : v.items()) collectAtoms(item, out);
      return;
    case Value::Kind::Tree:
    case Value::Kind::Context: {
      const detail::TreeRep& rep = v.isTree() ? v.asTree().rep() : v.asContext().rep();
      for (const auto& n : rep.nodes) {
        if (n.value) collectAtoms(*n.value, out);
      }
      return;
    }
    case Value::Kind::Term: collectAtoms(v.asTerm(), out); return;
    default: return;
  }
}

}  // namespace

std::vector<Value> activeDomain(const State& s) {
  std::set<Value> seen;
  for (const auto& [loc, v] : s.bindings()) {
    for (const Value& a : loc.args) collectValues(a, seen);
    collectValues(v, seen);
  }
  for (const Value& a : s.universe()) collectValues(a, seen);
  return {seen.begin(), seen.end()};
}

std::vector<std::string> atomsOf(const State& s) {
  std::set<std::string> out;
  for (const auto& [loc, v] : s.bindings()) {
    for (const Value& a : loc.args) collectAtoms(a, out);
    collectAtoms(v, out);
  }
  for (const Value& a : s.universe()) collectAtoms(a, out);
  return {out.begin(), out.end()};
}

bool subsumes(const SubLocation& l1, const SubLocation& l2, const State& s) {
  if (!(l1.base == l2.base)) return false;
  if (l1.path.size() > l2.path.size()) return false;
  if (!std::equal(l1.path.begin(), l1.path.end(), l2.path.begin())) return false;
  if (l1.path.size() == l2.path.size()) return true;
  // A proper sublocation exists only inside a tree value.
  const Value& v = s.get(l1.base);
  if (!v.isTree() && !v.isContext()) return false;
  const LabelledTree& t = v.isTree() ? static_cast<const LabelledTree&>(v.asTree())
                                     : static_cast<const LabelledTree&>(v.asContext());
  return t.nodeAt(l2.path).has_value();
}

bool dependsOn(const SubLocation& l1, const SubLocation& l2, const State& s) {
  return subsumes(l2, l1, s);
}

namespace {

class Renamer {
 public:
  explicit Renamer(const AtomRenaming& pi) : pi_(pi) {}

  std::string atom(const std::string& name) const {
    auto it = pi_.find(name);
    if (it == pi_.end()) {
      throw Error(ErrorCode::PartialBijection, "renaming is undefined on atom '" + name);
    }
    return it->second;
  }

  Label label(const Label& l) const {
    if (l.isXi() || isProgramLabel(l.name())) return l;
    auto it = pi_.find(l.name());
    return it == pi_.end() ? l : Label(it->second);
  }

  Value value(const Value& v) const {
    switch (v.kind()) {
      case Value::Kind::Atom: return Value::atom(atom(v.atomName()));
      case Value::Kind::Tuple:
      case Value::Kind::Multiset: {
        std::vector<Value> items;
        items.reserve(v.items().size());
        for (const Value& item : v.items()) items.push_back(value(item));
        return v.isTuple() ? Value::tuple(std::move(items)) : Value::multiset(std::move(items));
      }
      case Value::Kind::Tree: return Value::tree(Tree::fromRep(tree(v.asTree().rep())));
      case Value::Kind::Context: return Value::context(Context::fromRep(tree(v.asContext().rep())));
      case Value::Kind::Term:
        return Value::term(mapLiterals(v.asTerm(), [this](const Value& x) { return value(x); }));
      default: return v;
    }
  }

 private:
  std::shared_ptr<const detail::TreeRep> tree(const detail::TreeRep& rep) const {
    auto out = std::make_shared<detail::TreeRep>(rep);
    for (auto& n : out->nodes) {
      n.label = label(n.label);
      if (n.value) n.value = value(*n.value);
    }
    return out;
  }

  const AtomRenaming& pi_;
};

}  // namespace

Value renameValue(const Value& v, const AtomRenaming& pi) { return Renamer(pi).value(v); }

State renameState(const State& s, const AtomRenaming& pi) {
  std::set<std::string> targets;
  for (const auto& [from, to] : pi) {
    if (!targets.insert(to).second) {
      throw Error(ErrorCode::PartialBijection, "renaming is not injective on '" + to + "'");
    }
  }
  Renamer r(pi);
  State out(s.signature());
  out.reserve() = s.reserve();
  for (const Value& a : s.universe()) out.addUniverseAtom(r.value(a));
  for (const auto& [loc, v] : s.bindings()) {
    Location l{loc.symbol, {}};
    for (const Value& a : loc.args) l.args.push_back(r.value(a));
    out.set(l, r.value(v));
  }
  return out;
}

}  // namespace rasm

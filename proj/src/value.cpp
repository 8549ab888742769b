// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/value.hpp"

#include <algorithm>

#include "rasm/error.hpp"
#include "rasm/syntax.hpp"
#include "rasm/tree.hpp"

namespace rasm {

std::string_view to_string(Value::Kind kind) noexcept {
  switch (kind) {
    case Value::Kind::Undef: return "undef";
    case Value::Kind::Bool: return "boolean";
    case Value::Kind::Nat: return "natural";
    case Value::Kind::Atom: return "atom";
    case Value::Kind::Tuple: return "tuple";
    case Value::Kind::Multiset: return "multiset";
    case Value::Kind::Tree: return "tree";
    case Value::Kind::Context: return "context";
    case Value::Kind::Term: return "term";
  }
  return "?";
}

Value Value::boolean(bool b) {
  Value v;
  v.v_ = b;
  return v;
}

Value Value::nat(std::uint64_t n) {
  Value v;
  v.v_ = n;
  return v;
}

Value Value::atom(std::string name) {
  if (name.empty()) throw Error(ErrorCode::InvalidArgument, "empty atom name");
  Value v;
  v.v_ = AtomBox{std::move(name)};
  return v;
}

Value Value::tuple(std::vector<Value> items) {
  Value v;
  v.v_ = SeqBox{std::make_shared<const std::vector<Value>>(std::move(items))};
  return v;
}

Value Value::multiset(std::vector<Value> items) {
  std::sort(items.begin(), items.end());
  Value v;
  v.v_ = MultisetBox{std::make_shared<const std::vector<Value>>(std::move(items))};
  return v;
}

Value Value::tree(const Tree& t) {
  Value v;
  v.v_ = TreeBox{t.sharedRep()};
  return v;
}

Value Value::context(const Context& c) {
  Value v;
  v.v_ = ContextBox{c.sharedRep()};
  return v;
}

Value Value::term(const Term& t) {
  Value v;
  v.v_ = TermBox{t.node()};
  return v;
}

namespace {
[[noreturn]] void kindMismatch(Value::Kind want, Value::Kind got) {
  throw Error(ErrorCode::InvalidArgument,
              "expected " + std::string(to_string(want)) + ", got " + std::string(to_string(got)));
}
}  // namespace

bool Value::asBool() const {
  if (!isBool()) kindMismatch(Kind::Bool, kind());
  return std::get<bool>(v_);
}

std::uint64_t Value::asNat() const {
  if (!isNat()) kindMismatch(Kind::Nat, kind());
  return std::get<std::uint64_t>(v_);
}

const std::string& Value::atomName() const {
  if (!isAtom()) kindMismatch(Kind::Atom, kind());
  return std::get<AtomBox>(v_).name;
}

const std::vector<Value>& Value::items() const {
  if (isTuple()) return *std::get<SeqBox>(v_).items;
  if (isMultiset()) return *std::get<MultisetBox>(v_).items;
  kindMismatch(Kind::Tuple, kind());
}

Tree Value::asTree() const {
  if (!isTree()) kindMismatch(Kind::Tree, kind());
  return Tree::fromRep(std::get<TreeBox>(v_).rep);
}

Context Value::asContext() const {
  if (!isContext()) kindMismatch(Kind::Context, kind());
  return Context::fromRep(std::get<ContextBox>(v_).rep);
}

Term Value::asTerm() const {
  if (!isTerm()) kindMismatch(Kind::Term, kind());
  return Term(std::get<TermBox>(v_).node);
}

std::size_t Value::hash() const {
  std::size_t h = static_cast<std::size_t>(kind()) * 0x100000001b3ULL;
  switch (kind()) {
    case Kind::Undef: return h;
    case Kind::Bool: return hashCombine(h, std::get<bool>(v_) ? 1 : 2);
    case Kind::Nat: return hashCombine(h, std::hash<std::uint64_t>{}(std::get<std::uint64_t>(v_)));
    case Kind::Atom: return hashCombine(h, std::hash<std::string>{}(std::get<AtomBox>(v_).name));
    case Kind::Tuple:
    case Kind::Multiset:
      for (const Value& item : items()) h = hashCombine(h, item.hash());
      return hashCombine(h, items().size());
    case Kind::Tree: return hashCombine(h, asTree().hash());
    case Kind::Context: return hashCombine(h, asContext().hash());
    case Kind::Term: return hashCombine(h, asTerm().hash());
  }
  return h;
}

bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.v_.index() <=> b.v_.index(); c != 0) return c;
  using K = Value::Kind;
  switch (a.kind()) {
    case K::Undef: return std::strong_ordering::equal;
    case K::Bool: return std::get<bool>(a.v_) <=> std::get<bool>(b.v_);
    case K::Nat: return std::get<std::uint64_t>(a.v_) <=> std::get<std::uint64_t>(b.v_);
    case K::Atom: return a.atomName() <=> b.atomName();
    case K::Tuple:
    case K::Multiset: {
      const auto& x = a.items();
      const auto& y = b.items();
      if (&x == &y) return std::strong_ordering::equal;
      return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }
    case K::Tree:
    case K::Context: {
      const auto& ra = a.kind() == K::Tree ? std::get<Value::TreeBox>(a.v_).rep
                                            : std::get<Value::ContextBox>(a.v_).rep;
      const auto& rb = b.kind() == K::Tree ? std::get<Value::TreeBox>(b.v_).rep
                                            : std::get<Value::ContextBox>(b.v_).rep;
      if (ra == rb) return std::strong_ordering::equal;
      if (a.kind() == K::Tree) return a.asTree() <=> b.asTree();
      return a.asContext() <=> b.asContext();
    }
    case K::Term: return a.asTerm() <=> b.asTerm();
  }
  return std::strong_ordering::equal;
}

}  // namespace rasm

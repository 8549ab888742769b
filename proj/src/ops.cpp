// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "rasm/error.hpp"
#include "rasm/eval.hpp"
#include "rasm/tree.hpp"
#include "rasm/updates.hpp"

namespace rasm {

namespace {

using Args = std::vector<Value>;

struct OpDef {
  std::size_t minArgs;
  std::size_t maxArgs;  // SIZE_MAX for variadic
  std::function<Value(const Args&)> fn;
};

constexpr std::size_t kVariadic = SIZE_MAX;

Value natOp(const Args& a, std::optional<std::uint64_t> (*f)(std::uint64_t, std::uint64_t)) {
  if (!a[0].isNat() || !a[1].isNat()) return Value::undef();
  auto r = f(a[0].asNat(), a[1].asNat());
  return r ? Value::nat(*r) : Value::undef();
}

Value cmpOp(const Args& a, bool (*f)(std::uint64_t, std::uint64_t)) {
  if (!a[0].isNat() || !a[1].isNat()) return Value::undef();
  return Value::boolean(f(a[0].asNat(), a[1].asNat()));
}

std::optional<Label> asLabel(const Value& v) {
  if (!v.isAtom() || v.atomName() == "^") return std::nullopt;
  return Label(v.atomName());
}

std::optional<Hedge> asHedge(const Value& v) {
  if (v.isTree()) return Hedge{v.asTree()};
  if (!v.isTuple()) return std::nullopt;
  Hedge h;
  h.reserve(v.items().size());
  for (const Value& t : v.items()) {
    if (!t.isTree()) return std::nullopt;
    h.push_back(t.asTree());
  }
  return h;
}

Value hedgeValue(const Hedge& h) {
  std::vector<Value> items;
  items.reserve(h.size());
  for (const Tree& t : h) items.push_back(Value::tree(t));
  return Value::tuple(std::move(items));
}

const LabelledTree* asLabelled(const Value& v, std::optional<Tree>& tbuf,
                               std::optional<Context>& cbuf) {
  if (v.isTree()) return &tbuf.emplace(v.asTree());
  if (v.isContext()) return &cbuf.emplace(v.asContext());
  return nullptr;
}

// A node reference is either a preorder index or a child-index path tuple.
std::optional<NodeId> asNode(const LabelledTree& t, const Value& v) {
  if (v.isNat()) {
    if (v.asNat() >= t.nodeCount()) return std::nullopt;
    return NodeId{static_cast<std::uint32_t>(v.asNat())};
  }
  if (!v.isTuple()) return std::nullopt;
  NodePath p;
  for (const Value& i : v.items()) {
    if (!i.isNat() || i.asNat() > UINT32_MAX) return std::nullopt;
    p.push_back(static_cast<std::uint32_t>(i.asNat()));
  }
  return t.nodeAt(p);
}

// Runs a tree-algebra computation; precondition failures give undef.
template <typename F>
Value guarded(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return Value::undef();
  }
}

Value childWithLabel(const Value& v, const char* label) {
  if (!v.isTree()) return Value::undef();
  Tree t = v.asTree();
  std::optional<NodeId> hit;
  for (std::uint32_t c : t.children(t.root())) {
    if (t.label(NodeId{c}).name() == label) {
      if (hit) return Value::undef();
      hit = NodeId{c};
    }
  }
  return hit ? Value::tree(subtree(t, *hit)) : Value::undef();
}

Value andOr(const Args& a, bool isAnd) {
  bool sawUndef = false;
  for (const Value& v : a) {
    if (!v.isBool()) {
      sawUndef = true;
    } else if (v.asBool() != isAnd) {
      return Value::boolean(!isAnd);
    }
  }
  return sawUndef ? Value::undef() : Value::boolean(isAnd);
}

// Term-level view of a shared operator: op(current, operands...).
OpDef sharedOp(const char* name) {
  return {1, kVariadic, [name](const Args& a) {
            const SharedOperator* op = OperatorRegistry::standard().find(name);
            auto r = op->apply(a[0], Args(a.begin() + 1, a.end()));
            return r ? *r : Value::undef();
          }};
}

const std::map<std::string, OpDef>& table() {
  static const std::map<std::string, OpDef> ops = {
      {"=", {2, 2, [](const Args& a) { return Value::boolean(a[0] == a[1]); }}},
      {"!=", {2, 2, [](const Args& a) { return Value::boolean(!(a[0] == a[1])); }}},
      {"and", {2, kVariadic, [](const Args& a) { return andOr(a, true); }}},
      {"or", {2, kVariadic, [](const Args& a) { return andOr(a, false); }}},
      {"not",
       {1, 1,
        [](const Args& a) { return a[0].isBool() ? Value::boolean(!a[0].asBool()) : Value::undef(); }}},
      {"+",
       {2, 2,
        [](const Args& a) {
          return natOp(a, [](std::uint64_t x, std::uint64_t y) -> std::optional<std::uint64_t> {
            return x + y;
          });
        }}},
      {"-",
       {2, 2,
        [](const Args& a) {
          return natOp(a, [](std::uint64_t x, std::uint64_t y) -> std::optional<std::uint64_t> {
            return x >= y ? x - y : 0;
          });
        }}},
      {"*",
       {2, 2,
        [](const Args& a) {
          return natOp(a, [](std::uint64_t x, std::uint64_t y) -> std::optional<std::uint64_t> {
            return x * y;
          });
        }}},
      {"<", {2, 2, [](const Args& a) { return cmpOp(a, [](auto x, auto y) { return x < y; }); }}},
      {"<=", {2, 2, [](const Args& a) { return cmpOp(a, [](auto x, auto y) { return x <= y; }); }}},
      {">", {2, 2, [](const Args& a) { return cmpOp(a, [](auto x, auto y) { return x > y; }); }}},
      {">=", {2, 2, [](const Args& a) { return cmpOp(a, [](auto x, auto y) { return x >= y; }); }}},
      {"tuple", {0, kVariadic, [](const Args& a) { return Value::tuple(a); }}},
      {"multiset", {0, kVariadic, [](const Args& a) { return Value::multiset(a); }}},
      {"proj",
       {2, 2,
        [](const Args& a) {
          if (!a[0].isTuple() || !a[1].isNat()) return Value::undef();
          const std::uint64_t i = a[1].asNat();
          if (i == 0 || i > a[0].items().size()) return Value::undef();
          return a[0].items()[i - 1];
        }}},
      {"union",
       {2, kVariadic,
        [](const Args& a) {
          std::vector<Value> items;
          for (const Value& m : a) {
            if (!m.isMultiset()) return Value::undef();
            items.insert(items.end(), m.items().begin(), m.items().end());
          }
          return Value::multiset(std::move(items));
        }}},
      {"size",
       {1, 1,
        [](const Args& a) {
          if (!a[0].isTuple() && !a[0].isMultiset()) return Value::undef();
          return Value::nat(a[0].items().size());
        }}},
      {"label_hedge",
       {2, 2,
        [](const Args& a) {
          auto l = asLabel(a[0]);
          auto h = asHedge(a[1]);
          if (!l || !h) return Value::undef();
          return guarded([&] { return Value::tree(labelHedge(*l, *h)); });
        }}},
      {"label_context",
       {2, 2,
        [](const Args& a) {
          auto l = asLabel(a[0]);
          if (!l || !a[1].isContext()) return Value::undef();
          return guarded([&] { return Value::context(labelContext(*l, a[1].asContext())); });
        }}},
      {"left_extend",
       {2, 2,
        [](const Args& a) {
          auto h = asHedge(a[0]);
          if (!h) return Value::undef();
          return guarded([&] {
            if (a[1].isContext()) return Value::context(leftExtend(*h, a[1].asContext()));
            if (a[1].isTree()) return Value::tree(leftExtend(*h, a[1].asTree()));
            return Value::undef();
          });
        }}},
      {"right_extend",
       {2, 2,
        [](const Args& a) {
          auto h = asHedge(a[0]);
          if (!h) return Value::undef();
          return guarded([&] {
            if (a[1].isContext()) return Value::context(rightExtend(*h, a[1].asContext()));
            if (a[1].isTree()) return Value::tree(rightExtend(*h, a[1].asTree()));
            return Value::undef();
          });
        }}},
      {"concat",
       {2, 2,
        [](const Args& a) {
          auto h1 = asHedge(a[0]);
          auto h2 = asHedge(a[1]);
          if (!h1 || !h2) return Value::undef();
          return hedgeValue(concatHedges(*h1, *h2));
        }}},
      {"inject_hedge",
       {2, 2,
        [](const Args& a) {
          auto h = asHedge(a[1]);
          if (!a[0].isContext() || !h) return Value::undef();
          return guarded([&] { return Value::tree(injectHedge(a[0].asContext(), *h)); });
        }}},
      {"inject_context",
       {2, 2,
        [](const Args& a) {
          if (!a[0].isContext() || !a[1].isContext()) return Value::undef();
          return Value::context(injectContext(a[0].asContext(), a[1].asContext()));
        }}},
      {"subtree",
       {2, 2,
        [](const Args& a) {
          if (!a[0].isTree()) return Value::undef();
          Tree t = a[0].asTree();
          auto o = asNode(t, a[1]);
          if (!o) return Value::undef();
          return Value::tree(subtree(t, *o));
        }}},
      {"context",
       {3, 3,
        [](const Args& a) {
          if (!a[0].isTree()) return Value::undef();
          Tree t = a[0].asTree();
          auto o1 = asNode(t, a[1]);
          auto o2 = asNode(t, a[2]);
          if (!o1 || !o2) return Value::undef();
          return guarded([&] { return Value::context(contextAt(t, *o1, *o2)); });
        }}},
      {"subst_tt",
       {3, 3,
        [](const Args& a) {
          if (!a[0].isTree() || !a[2].isTree()) return Value::undef();
          Tree t = a[0].asTree();
          auto o = asNode(t, a[1]);
          if (!o) return Value::undef();
          return Value::tree(substTT(t, *o, a[2].asTree()));
        }}},
      {"subst_tc",
       {3, 3,
        [](const Args& a) {
          if (!a[0].isTree() || !a[2].isContext()) return Value::undef();
          Tree t = a[0].asTree();
          auto o = asNode(t, a[1]);
          if (!o) return Value::undef();
          return Value::context(substTC(t, *o, a[2].asContext()));
        }}},
      {"subst_cc",
       {2, 2,
        [](const Args& a) {
          if (!a[0].isContext() || !a[1].isContext()) return Value::undef();
          return Value::context(substCC(a[0].asContext(), a[1].asContext()));
        }}},
      {"subst_ct",
       {2, 2,
        [](const Args& a) {
          if (!a[0].isContext() || !a[1].isTree()) return Value::undef();
          return Value::tree(substCT(a[0].asContext(), a[1].asTree()));
        }}},
      {"root",
       {1, 1,
        [](const Args& a) {
          return a[0].isTree() || a[0].isContext() ? Value::tuple({}) : Value::undef();
        }}},
      {"children",
       {1, 1,
        [](const Args& a) {
          if (!a[0].isTree()) return Value::undef();
          Tree t = a[0].asTree();
          std::vector<Value> out;
          for (std::uint32_t c : t.children(t.root())) {
            out.push_back(Value::tree(subtree(t, NodeId{c})));
          }
          return Value::tuple(std::move(out));
        }}},
      {"label",
       {1, 1,
        [](const Args& a) {
          std::optional<Tree> tb;
          std::optional<Context> cb;
          const LabelledTree* t = asLabelled(a[0], tb, cb);
          if (!t || t->label(t->root()).isXi()) return Value::undef();
          return Value::atom(t->label(t->root()).name());
        }}},
      {"value",
       {1, 1,
        [](const Args& a) {
          if (!a[0].isTree()) return Value::undef();
          Tree t = a[0].asTree();
          const Value* v = t.value(t.root());
          return v ? *v : Value::undef();
        }}},
      {"leaf",
       {1, 2,
        [](const Args& a) {
          auto l = asLabel(a[0]);
          if (!l) return Value::undef();
          if (a.size() == 1 || a[1].isUndef()) return Value::tree(Tree::leaf(*l));
          return Value::tree(Tree::leaf(*l, a[1]));
        }}},
      {"signature_of", {1, 1, [](const Args& a) { return childWithLabel(a[0], "signature"); }}},
      {"rule_of", {1, 1, [](const Args& a) { return childWithLabel(a[0], "rule"); }}},
      {"add", sharedOp("add")},
      {"max", sharedOp("max")},
      {"min", sharedOp("min")},
      {"append", sharedOp("append")},
      {"tree_replace", sharedOp("tree_replace")},
      {"tree_append", sharedOp("tree_append")},
  };
  return ops;
}

}  // namespace

const std::vector<std::string>& backgroundOps() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& kv : table()) out.push_back(kv.first);
    return out;
  }();
  return names;
}

bool isBackgroundOp(const std::string& name) { return table().count(name) > 0; }

Value applyBackgroundOp(const std::string& name, const std::vector<Value>& args) {
  auto it = table().find(name);
  if (it == table().end()) throw Error(ErrorCode::UnknownOperator, name);
  const OpDef& def = it->second;
  if (args.size() < def.minArgs || args.size() > def.maxArgs) {
    throw Error(ErrorCode::ArityMismatch, "operator " + name + " applied to " +
                                              std::to_string(args.size()) + " arguments");
  }
  return def.fn(args);
}

}  // namespace rasm

// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/updates.hpp"

#include <algorithm>

#include "rasm/error.hpp"
#include "rasm/tree.hpp"

namespace rasm {

std::strong_ordering operator<=>(const Update& a, const Update& b) {
  if (auto c = a.loc <=> b.loc; c != 0) return c;
  return a.value <=> b.value;
}

std::strong_ordering operator<=>(const SharedUpdate& a, const SharedUpdate& b) {
  if (auto c = a.loc <=> b.loc; c != 0) return c;
  if (auto c = a.op <=> b.op; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

const Location& locationOf(const UpdateItem& item) {
  return std::visit([](const auto& u) -> const Location& { return u.loc; }, item);
}

void UpdateMultiset::add(const UpdateMultiset& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::vector<UpdateItem> UpdateMultiset::sorted() const {
  std::vector<UpdateItem> out = items_;
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const UpdateMultiset& a, const UpdateMultiset& b) {
  return a.size() == b.size() && a.sorted() == b.sorted();
}

namespace {

std::optional<Value> foldNat(const Value& current, const std::vector<Value>& args,
                             std::uint64_t (*f)(std::uint64_t, std::uint64_t)) {
  if (args.empty()) return std::nullopt;
  std::optional<std::uint64_t> acc;
  if (current.isNat()) acc = current.asNat();
  else if (!current.isUndef()) return std::nullopt;
  for (const Value& a : args) {
    if (!a.isNat()) return std::nullopt;
    acc = acc ? f(*acc, a.asNat()) : a.asNat();
  }
  return Value::nat(*acc);
}

std::optional<NodePath> asPath(const Value& v) {
  if (!v.isTuple()) return std::nullopt;
  NodePath p;
  for (const Value& i : v.items()) {
    if (!i.isNat() || i.asNat() > UINT32_MAX) return std::nullopt;
    p.push_back(static_cast<std::uint32_t>(i.asNat()));
  }
  return p;
}

bool nested(const NodePath& a, const NodePath& b) {
  const std::size_t n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), b.begin());
}

bool treeOpsCommute(const std::vector<Value>& a, const std::vector<Value>& b) {
  if (a.empty() || b.empty()) return false;
  auto pa = asPath(a[0]);
  auto pb = asPath(b[0]);
  return pa && pb && !nested(*pa, *pb);
}

std::optional<Hedge> asHedge(const Value& v) {
  if (v.isTree()) return Hedge{v.asTree()};
  if (!v.isTuple()) return std::nullopt;
  Hedge h;
  for (const Value& t : v.items()) {
    if (!t.isTree()) return std::nullopt;
    h.push_back(t.asTree());
  }
  return h;
}

std::optional<Value> treeEdit(const Value& current, const std::vector<Value>& args, bool append) {
  if (!current.isTree() || args.size() != 2) return std::nullopt;
  auto path = asPath(args[0]);
  if (!path) return std::nullopt;
  const Tree t = current.asTree();
  auto node = t.nodeAt(*path);
  if (!node) return std::nullopt;
  try {
    if (!append) {
      if (!args[1].isTree()) return std::nullopt;
      return Value::tree(substTT(t, *node, args[1].asTree()));
    }
    auto h = asHedge(args[1]);
    if (!h) return std::nullopt;
    return Value::tree(substTT(t, *node, rightExtend(*h, subtree(t, *node))));
  } catch (const Error&) {
    return std::nullopt;
  }
}

OperatorRegistry makeStandard() {
  OperatorRegistry r;
  r.add({"union", CommutationClass::Always,
         [](const Value& current, const std::vector<Value>& args) -> std::optional<Value> {
           std::vector<Value> items;
           if (current.isMultiset()) items = current.items();
           else if (!current.isUndef()) return std::nullopt;
           for (const Value& a : args) {
             if (!a.isMultiset()) return std::nullopt;
             items.insert(items.end(), a.items().begin(), a.items().end());
           }
           return Value::multiset(std::move(items));
         },
         {}, {}});
  r.add({"add", CommutationClass::Always,
         [](const Value& c, const std::vector<Value>& a) {
           return foldNat(c, a, [](std::uint64_t x, std::uint64_t y) { return x + y; });
         },
         {}, {}});
  r.add({"max", CommutationClass::Always,
         [](const Value& c, const std::vector<Value>& a) {
           return foldNat(c, a, [](std::uint64_t x, std::uint64_t y) { return std::max(x, y); });
         },
         {}, {}});
  r.add({"min", CommutationClass::Always,
         [](const Value& c, const std::vector<Value>& a) {
           return foldNat(c, a, [](std::uint64_t x, std::uint64_t y) { return std::min(x, y); });
         },
         {}, {}});
  r.add({"append", CommutationClass::Never,
         [](const Value& current, const std::vector<Value>& args) -> std::optional<Value> {
           std::vector<Value> items;
           if (current.isTuple()) items = current.items();
           else if (!current.isUndef()) return std::nullopt;
           items.insert(items.end(), args.begin(), args.end());
           return Value::tuple(std::move(items));
         },
         {}, {}});
  r.add({"tree_replace", CommutationClass::Pairwise,
         [](const Value& c, const std::vector<Value>& a) { return treeEdit(c, a, false); },
         treeOpsCommute, "tree"});
  r.add({"tree_append", CommutationClass::Pairwise,
         [](const Value& c, const std::vector<Value>& a) { return treeEdit(c, a, true); },
         treeOpsCommute, "tree"});
  return r;
}

}  // namespace

const OperatorRegistry& OperatorRegistry::standard() {
  static const OperatorRegistry registry = makeStandard();
  return registry;
}

void OperatorRegistry::add(SharedOperator op) {
  std::string name = op.name;
  ops_.insert_or_assign(std::move(name), std::move(op));
}

const SharedOperator* OperatorRegistry::find(const std::string& name) const {
  auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : &it->second;
}

std::vector<std::string> OperatorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& kv : ops_) out.push_back(kv.first);
  return out;
}

std::optional<Value> foldShared(const Value& current, const std::vector<SharedUpdate>& group,
                                const OperatorRegistry& ops) {
  Value acc = current;
  for (const SharedUpdate& u : group) {
    const SharedOperator* op = ops.find(u.op);
    if (!op) throw Error(ErrorCode::UnknownOperator, "shared operator " + u.op);
    auto next = op->apply(acc, u.args);
    if (!next) return std::nullopt;
    acc = std::move(*next);
  }
  return acc;
}

namespace {

// Order-independent fold of one shared group, or nullopt if the group is incompatible.
std::optional<Value> collapseShared(const Value& current, std::vector<SharedUpdate> group,
                                    const OperatorRegistry& ops) {
  std::sort(group.begin(), group.end());
  if (group.size() <= kBruteForceGroupLimit) {
    auto first = foldShared(current, group, ops);
    if (!first) return std::nullopt;
    while (std::next_permutation(group.begin(), group.end())) {
      auto other = foldShared(current, group, ops);
      if (!other || !(*other == *first)) return std::nullopt;
    }
    return first;
  }
  const SharedOperator* op = ops.find(group.front().op);
  if (!op) throw Error(ErrorCode::UnknownOperator, "shared operator " + group.front().op);
  for (const SharedUpdate& u : group) {
    if (u.op == op->name) continue;
    const SharedOperator* other = ops.find(u.op);
    if (!other) throw Error(ErrorCode::UnknownOperator, "shared operator " + u.op);
    if (op->commutation != CommutationClass::Pairwise || op->family.empty() ||
        other->commutation != CommutationClass::Pairwise || other->family != op->family) {
      return std::nullopt;
    }
  }
  switch (op->commutation) {
    case CommutationClass::Always: break;
    case CommutationClass::Pairwise:
      for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) {
          if (!op->commutes(group[i].args, group[j].args)) return std::nullopt;
        }
      }
      break;
    case CommutationClass::Never: return std::nullopt;
  }
  return foldShared(current, group, ops);
}

}  // namespace

UpdateSet collapse(const State& s, const UpdateMultiset& um, const OperatorRegistry& ops) {
  std::map<Location, std::pair<std::vector<Value>, std::vector<SharedUpdate>>> groups;
  for (const UpdateItem& item : um.items()) {
    auto& g = groups[locationOf(item)];
    if (const auto* u = std::get_if<Update>(&item)) {
      g.first.push_back(u->value);
    } else {
      const auto& su = std::get<SharedUpdate>(item);
      if (!ops.find(su.op)) throw Error(ErrorCode::UnknownOperator, "shared operator " + su.op);
      g.second.push_back(su);
    }
  }
  UpdateSet out;
  for (auto& [loc, g] : groups) {
    auto& [plain, shared] = g;
    std::optional<Value> v;
    if (shared.empty()) {
      if (std::all_of(plain.begin(), plain.end(), [&](const Value& x) { return x == plain[0]; })) {
        v = plain[0];
      }
    } else if (plain.empty()) {
      v = collapseShared(s.get(loc), std::move(shared), ops);
    }
    if (v) {
      out.updates.emplace(loc, std::move(*v));
    } else {
      out.consistent = false;
      out.clashes.push_back(loc);
    }
  }
  return out;
}

State applyUpdateSet(const State& s, const UpdateSet& u) {
  if (!u.consistent) return s;
  State next = s;
  for (const auto& [loc, v] : u.updates) next.set(loc, v);
  return next;
}

}  // namespace rasm

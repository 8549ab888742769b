// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasm/tree.hpp"

#include <algorithm>
#include <functional>

#include "rasm/error.hpp"

namespace rasm {

Label::Label(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error(ErrorCode::InvalidArgument, "empty label");
  if (name_ == "^") throw Error(ErrorCode::XiLabelForbidden, "use Label::xi() for the hole label");
}

Label Label::xi() { return Label(XiTag{}); }

namespace {

using detail::TreeNode;
using detail::TreeRep;

constexpr std::uint32_t kNoParent = TreeBuilder::kNoParent;

using Builder = TreeBuilder;

std::shared_ptr<const TreeRep> xiRep() {
  Builder b;
  b.add(Label::xi(), std::nullopt, kNoParent);
  return b.finish();
}

void requireNotXi(const Label& a) {
  if (a.isXi()) throw Error(ErrorCode::XiLabelForbidden, "ξ cannot label a new root");
}

std::vector<const LabelledTree*> pointers(const Hedge& h) {
  std::vector<const LabelledTree*> out;
  out.reserve(h.size());
  for (const Tree& t : h) out.push_back(&t);
  return out;
}

}  // namespace


// ---------------------------------------------------------------------------
// TreeBuilder

std::uint32_t TreeBuilder::add(const Label& label, std::optional<Value> value,
                               std::uint32_t parent) {
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(detail::TreeNode{label, std::move(value), parent == kNoParent ? id : parent, 1, {}});
  if (parent != kNoParent) nodes_[parent].children.push_back(id);
  return id;
}

std::uint32_t TreeBuilder::copy(const detail::TreeRep& src, std::uint32_t o, std::uint32_t parent) {
  const detail::TreeNode& n = src.nodes[o];
  std::uint32_t id = add(n.label, n.value, parent);
  for (std::uint32_t c : n.children) copy(src, c, id);
  return id;
}

void TreeBuilder::copyReplacing(const detail::TreeRep& src, std::uint32_t o, std::uint32_t parent,
                                std::uint32_t target,
                                std::span<const LabelledTree* const> replacement) {
  if (o == target) {
    for (const LabelledTree* r : replacement) copy(r->rep(), 0, parent);
    return;
  }
  const detail::TreeNode& n = src.nodes[o];
  std::uint32_t id = add(n.label, n.value, parent);
  for (std::uint32_t c : n.children) copyReplacing(src, c, id, target, replacement);
}

std::shared_ptr<const detail::TreeRep> TreeBuilder::finish() {
  auto rep = std::make_shared<detail::TreeRep>();
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    detail::TreeNode& n = nodes_[i];
    std::uint32_t size = 1;
    for (std::uint32_t c : n.children) size += nodes_[c].size;
    n.size = size;
    if (!n.children.empty() && n.value) {
      throw Error(ErrorCode::InvalidArgument,
                  "interior node '" + n.label.name() + "' cannot carry a value");
    }
    if (n.label.isXi()) {
      if (!n.children.empty()) throw Error(ErrorCode::InvalidArgument, "ξ must be a leaf");
      if (n.value) throw Error(ErrorCode::InvalidArgument, "ξ-leaf cannot carry a value");
      ++rep->xiCount;
      rep->xiIndex = static_cast<std::uint32_t>(i);
    }
  }
  rep->nodes = std::move(nodes_);
  nodes_.clear();
  return rep;
}

// ---------------------------------------------------------------------------
// LabelledTree

std::size_t LabelledTree::nodeCount() const noexcept { return rep_ ? rep_->nodes.size() : 0; }

void LabelledTree::checkNode(NodeId o) const {
  if (!contains(o)) {
    throw Error(ErrorCode::UnknownNode, "node " + std::to_string(o.index) + " not in tree of " +
                                            std::to_string(nodeCount()) + " nodes");
  }
}

const Label& LabelledTree::label(NodeId o) const {
  checkNode(o);
  return rep_->nodes[o.index].label;
}

const Value* LabelledTree::value(NodeId o) const {
  checkNode(o);
  const auto& v = rep_->nodes[o.index].value;
  return v ? &*v : nullptr;
}

std::span<const std::uint32_t> LabelledTree::children(NodeId o) const {
  checkNode(o);
  return rep_->nodes[o.index].children;
}

NodeId LabelledTree::child(NodeId o, std::size_t i) const {
  auto cs = children(o);
  if (i >= cs.size()) {
    throw Error(ErrorCode::UnknownNode, "node " + std::to_string(o.index) + " has no child " +
                                            std::to_string(i));
  }
  return NodeId{cs[i]};
}

std::optional<NodeId> LabelledTree::parent(NodeId o) const {
  checkNode(o);
  if (o.index == 0) return std::nullopt;
  return NodeId{rep_->nodes[o.index].parent};
}

std::size_t LabelledTree::subtreeSize(NodeId o) const {
  checkNode(o);
  return rep_->nodes[o.index].size;
}

bool LabelledTree::isProperAncestor(NodeId ancestor, NodeId descendant) const {
  checkNode(ancestor);
  checkNode(descendant);
  // Preorder numbering: the subtree at a occupies [a, a + size(a)).
  return descendant.index > ancestor.index &&
         descendant.index < ancestor.index + rep_->nodes[ancestor.index].size;
}

NodePath LabelledTree::pathOf(NodeId o) const {
  checkNode(o);
  NodePath path;
  std::uint32_t cur = o.index;
  while (cur != 0) {
    std::uint32_t p = rep_->nodes[cur].parent;
    const auto& siblings = rep_->nodes[p].children;
    auto it = std::find(siblings.begin(), siblings.end(), cur);
    path.push_back(static_cast<std::uint32_t>(it - siblings.begin()));
    cur = p;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<NodeId> LabelledTree::nodeAt(const NodePath& path) const {
  if (!rep_) return std::nullopt;
  std::uint32_t cur = 0;
  for (std::uint32_t i : path) {
    const auto& cs = rep_->nodes[cur].children;
    if (i >= cs.size()) return std::nullopt;
    cur = cs[i];
  }
  return NodeId{cur};
}

std::size_t LabelledTree::xiCount() const noexcept { return rep_ ? rep_->xiCount : 0; }

std::size_t LabelledTree::subtreeHash(NodeId o) const {
  checkNode(o);
  std::function<std::size_t(std::uint32_t)> go = [&](std::uint32_t i) -> std::size_t {
    const TreeNode& n = rep_->nodes[i];
    std::size_t h = std::hash<std::string>{}(n.label.name());
    h = hashCombine(h, n.value ? n.value->hash() + 1 : 0);
    h = hashCombine(h, n.children.size());
    for (std::uint32_t c : n.children) h = hashCombine(h, go(c));
    return h;
  };
  return go(o.index);
}

bool operator==(const LabelledTree& a, const LabelledTree& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.nodeCount() != b.nodeCount()) return false;
  const auto& na = a.rep_->nodes;
  const auto& nb = b.rep_->nodes;
  for (std::size_t i = 0; i < na.size(); ++i) {
    if (na[i].label != nb[i].label || na[i].children.size() != nb[i].children.size() ||
        na[i].value.has_value() != nb[i].value.has_value()) {
      return false;
    }
    if (na[i].value && !(*na[i].value == *nb[i].value)) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const LabelledTree& a, const LabelledTree& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  const auto& na = a.rep_->nodes;
  const auto& nb = b.rep_->nodes;
  std::size_t n = std::min(na.size(), nb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = na[i].label <=> nb[i].label; c != 0) return c;
    if (auto c = na[i].children.size() <=> nb[i].children.size(); c != 0) return c;
    if (auto c = na[i].value.has_value() <=> nb[i].value.has_value(); c != 0) return c;
    if (na[i].value) {
      if (auto c = *na[i].value <=> *nb[i].value; c != 0) return c;
    }
  }
  return na.size() <=> nb.size();
}

// ---------------------------------------------------------------------------
// Tree / Context construction

Tree Tree::leaf(const Label& label, std::optional<Value> value) {
  requireNotXi(label);
  Builder b;
  b.add(label, std::move(value), kNoParent);
  return Tree(b.finish());
}

Tree Tree::node(const Label& label, std::span<const Tree> children) {
  requireNotXi(label);
  Builder b;
  std::uint32_t r = b.add(label, std::nullopt, kNoParent);
  for (const Tree& c : children) b.copy(c.rep(), 0, r);
  return Tree(b.finish());
}

Tree Tree::fromRep(std::shared_ptr<const detail::TreeRep> rep) {
  if (!rep || rep->nodes.empty()) throw Error(ErrorCode::NotATree, "empty tree");
  if (rep->xiCount != 0) throw Error(ErrorCode::NotATree, "tree contains a ξ-leaf");
  return Tree(std::move(rep));
}

Context Context::hole() {
  static const auto rep = xiRep();
  return Context(rep);
}

NodeId Context::holeNode() const noexcept { return NodeId{rep_->xiIndex}; }

Context Context::fromRep(std::shared_ptr<const detail::TreeRep> rep) {
  if (!rep || rep->nodes.empty()) throw Error(ErrorCode::NotAContext, "empty tree");
  if (rep->xiCount != 1) {
    throw Error(ErrorCode::NotAContext,
                "context needs exactly one ξ-leaf, found " + std::to_string(rep->xiCount));
  }
  return Context(std::move(rep));
}

// ---------------------------------------------------------------------------
// Selectors and substitutions

Tree subtree(const Tree& t, NodeId o) {
  if (!t.contains(o)) throw Error(ErrorCode::UnknownNode, "subtree: node " + std::to_string(o.index));
  if (o.index == 0) return t;
  Builder b;
  b.copy(t.rep(), o.index, kNoParent);
  return Tree::fromRep(b.finish());
}

Context contextAt(const Tree& t, NodeId o1, NodeId o2) {
  if (!t.contains(o1) || !t.contains(o2)) throw Error(ErrorCode::UnknownNode, "context: unknown node");
  if (!t.isProperAncestor(o1, o2)) {
    throw Error(ErrorCode::NotAnAncestor, "node " + std::to_string(o1.index) +
                                              " is not a proper ancestor of node " +
                                              std::to_string(o2.index));
  }
  const Context hole = Context::hole();
  const LabelledTree* repl[] = {&hole};
  Builder b;
  b.copyReplacing(t.rep(), o1.index, kNoParent, o2.index, repl);
  return Context::fromRep(b.finish());
}

Tree substTT(const Tree& t1, NodeId o, const Tree& t2) {
  if (!t1.contains(o)) throw Error(ErrorCode::UnknownNode, "subst_tt: node " + std::to_string(o.index));
  if (o.index == 0) return t2;
  const LabelledTree* repl[] = {&t2};
  Builder b;
  b.copyReplacing(t1.rep(), 0, kNoParent, o.index, repl);
  return Tree::fromRep(b.finish());
}

Context substTC(const Tree& t1, NodeId o, const Context& c) {
  if (!t1.contains(o)) throw Error(ErrorCode::UnknownNode, "subst_tc: node " + std::to_string(o.index));
  if (o.index == 0) return c;
  const LabelledTree* repl[] = {&c};
  Builder b;
  b.copyReplacing(t1.rep(), 0, kNoParent, o.index, repl);
  return Context::fromRep(b.finish());
}

Context substCC(const Context& c1, const Context& c2) {
  if (c1.isTrivial()) return c2;
  if (c2.isTrivial()) return c1;
  const LabelledTree* repl[] = {&c2};
  Builder b;
  b.copyReplacing(c1.rep(), 0, kNoParent, c1.holeNode().index, repl);
  return Context::fromRep(b.finish());
}

Tree substCT(const Context& c, const Tree& t) {
  if (c.isTrivial()) return t;
  const LabelledTree* repl[] = {&t};
  Builder b;
  b.copyReplacing(c.rep(), 0, kNoParent, c.holeNode().index, repl);
  return Tree::fromRep(b.finish());
}

// ---------------------------------------------------------------------------
// Algebra operators

Tree labelHedge(const Label& a, const Hedge& h) {
  requireNotXi(a);
  return Tree::node(a, h);
}

Context labelContext(const Label& a, const Context& c) {
  requireNotXi(a);
  Builder b;
  std::uint32_t r = b.add(a, std::nullopt, kNoParent);
  b.copy(c.rep(), 0, r);
  return Context::fromRep(b.finish());
}

namespace {

std::shared_ptr<const TreeRep> extendRoot(const Hedge& h, const LabelledTree& base, bool left) {
  const TreeRep& src = base.rep();
  const TreeNode& root = src.nodes[0];
  if (root.value && !h.empty()) {
    throw Error(ErrorCode::InvalidArgument, "cannot extend a leaf that carries a value");
  }
  Builder b;
  std::uint32_t r = b.add(root.label, h.empty() ? root.value : std::nullopt, kNoParent);
  if (left) {
    for (const Tree& t : h) b.copy(t.rep(), 0, r);
  }
  for (std::uint32_t c : root.children) b.copy(src, c, r);
  if (!left) {
    for (const Tree& t : h) b.copy(t.rep(), 0, r);
  }
  return b.finish();
}

}  // namespace

Context leftExtend(const Hedge& h, const Context& c) {
  if (c.isTrivial()) throw Error(ErrorCode::TrivialContextNotExtendable, "left_extend on ξ");
  if (h.empty()) return c;
  return Context::fromRep(extendRoot(h, c, true));
}

Context rightExtend(const Hedge& h, const Context& c) {
  if (c.isTrivial()) throw Error(ErrorCode::TrivialContextNotExtendable, "right_extend on ξ");
  if (h.empty()) return c;
  return Context::fromRep(extendRoot(h, c, false));
}

Tree leftExtend(const Hedge& h, const Tree& t) {
  if (h.empty()) return t;
  return Tree::fromRep(extendRoot(h, t, true));
}

Tree rightExtend(const Hedge& h, const Tree& t) {
  if (h.empty()) return t;
  return Tree::fromRep(extendRoot(h, t, false));
}

Hedge concatHedges(const Hedge& h1, const Hedge& h2) {
  Hedge out;
  out.reserve(h1.size() + h2.size());
  out.insert(out.end(), h1.begin(), h1.end());
  out.insert(out.end(), h2.begin(), h2.end());
  return out;
}

Tree injectHedge(const Context& c, const Hedge& h) {
  if (c.isTrivial()) {
    if (h.size() == 1) return h.front();
    if (h.empty()) throw Error(ErrorCode::EmptyHedgeAtRoot, "inject_hedge(ξ, ε) has no tree");
    throw Error(ErrorCode::EmptyHedgeAtRoot,
                "inject_hedge(ξ, h) needs a single tree, got " + std::to_string(h.size()));
  }
  auto repl = pointers(h);
  Builder b;
  b.copyReplacing(c.rep(), 0, kNoParent, c.holeNode().index, repl);
  return Tree::fromRep(b.finish());
}

Context injectContext(const Context& c1, const Context& c2) { return substCC(c1, c2); }

bool treesEqual(const LabelledTree& t1, const LabelledTree& t2) { return t1 == t2; }

namespace {

bool embedsAt(const TreeRep& a, std::uint32_t ia, const TreeRep& b, std::uint32_t ib) {
  const TreeNode& na = a.nodes[ia];
  const TreeNode& nb = b.nodes[ib];
  if (na.label != nb.label) return false;
  if (na.children.empty()) {
    // An interior node of b has no value, so a valued leaf of a cannot map onto it.
    if (na.value.has_value() != nb.value.has_value()) return false;
    return !na.value || *na.value == *nb.value;
  }
  const auto& ca = na.children;
  const auto& cb = nb.children;
  if (ca.size() > cb.size()) return false;
  for (std::size_t start = 0; start + ca.size() <= cb.size(); ++start) {
    bool ok = true;
    for (std::size_t k = 0; k < ca.size() && ok; ++k) ok = embedsAt(a, ca[k], b, cb[start + k]);
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool isSubtreeOf(const LabelledTree& t1, const LabelledTree& t2) {
  for (std::uint32_t i = 0; i < t2.nodeCount(); ++i) {
    if (embedsAt(t1.rep(), 0, t2.rep(), i)) return true;
  }
  return false;
}

std::string formatPath(const NodePath& path) {
  std::string out = "root";
  for (std::uint32_t i : path) out += "." + std::to_string(i);
  return out;
}

}  // namespace rasm

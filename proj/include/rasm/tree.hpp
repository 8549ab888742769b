// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rasm/value.hpp"

namespace rasm {

/// Node label. The hole label ξ is reserved for contexts and renders as `^`.
class Label {
 public:
  explicit Label(std::string name);
  static Label xi();

  const std::string& name() const noexcept { return name_; }
  bool isXi() const noexcept { return name_ == "^"; }

  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label&, const Label&) = default;

 private:
  struct XiTag {};
  explicit Label(XiTag) : name_("^") {}
  std::string name_;
};

/// Node identifier inside one tree. Trees produced by this library are
/// numbered canonically in preorder, so the root is always 0.
struct NodeId {
  std::uint32_t index = 0;
  friend bool operator==(NodeId, NodeId) = default;
  friend auto operator<=>(NodeId, NodeId) = default;
};

/// Child-index path from the root; the empty path names the root.
using NodePath = std::vector<std::uint32_t>;

namespace detail {

struct TreeNode {
  Label label;
  std::optional<Value> value;
  std::uint32_t parent;  // self for the root
  std::uint32_t size;    // nodes in the subtree rooted here
  std::vector<std::uint32_t> children;
};

struct TreeRep {
  std::vector<TreeNode> nodes;
  std::uint32_t xiCount = 0;
  std::uint32_t xiIndex = 0;
};

}  // namespace detail

/// Read-only view shared by Tree and Context.
class LabelledTree {
 public:
  NodeId root() const noexcept { return NodeId{0}; }
  std::size_t nodeCount() const noexcept;
  bool contains(NodeId o) const noexcept { return o.index < nodeCount(); }

  const Label& label(NodeId o) const;
  /// Leaf value, or nullptr where none is assigned.
  const Value* value(NodeId o) const;
  std::span<const std::uint32_t> children(NodeId o) const;
  NodeId child(NodeId o, std::size_t i) const;
  std::optional<NodeId> parent(NodeId o) const;
  bool isLeaf(NodeId o) const { return children(o).empty(); }
  /// Number of nodes in the largest subtree at o.
  std::size_t subtreeSize(NodeId o) const;
  /// True iff `ancestor` ≺_c⁺ `descendant`.
  bool isProperAncestor(NodeId ancestor, NodeId descendant) const;

  NodePath pathOf(NodeId o) const;
  std::optional<NodeId> nodeAt(const NodePath& path) const;

  std::size_t xiCount() const noexcept;

  /// Structural hash of the subtree at o (labels, order, leaf values).
  std::size_t subtreeHash(NodeId o) const;
  std::size_t hash() const { return subtreeHash(root()); }

  const detail::TreeRep& rep() const noexcept { return *rep_; }
  const std::shared_ptr<const detail::TreeRep>& sharedRep() const noexcept { return rep_; }

  friend bool operator==(const LabelledTree& a, const LabelledTree& b);
  friend std::strong_ordering operator<=>(const LabelledTree& a, const LabelledTree& b);

 protected:
  LabelledTree() = default;
  explicit LabelledTree(std::shared_ptr<const detail::TreeRep> rep) : rep_(std::move(rep)) {}
  void checkNode(NodeId o) const;

  std::shared_ptr<const detail::TreeRep> rep_;
};

/// An unranked labelled tree without ξ-leaves.
class Tree : public LabelledTree {
 public:
  /// Leaf with an optional value.
  static Tree leaf(const Label& label, std::optional<Value> value = std::nullopt);
  /// `label⟨children…⟩`; with no children this is a value-less leaf.
  static Tree node(const Label& label, std::span<const Tree> children);

  /// Adopts a representation; throws NotATree if it contains a ξ-leaf.
  static Tree fromRep(std::shared_ptr<const detail::TreeRep> rep);

 private:
  using LabelledTree::LabelledTree;
};

/// A tree with exactly one ξ-leaf, which carries no value.
class Context : public LabelledTree {
 public:
  /// The trivial context ξ.
  static Context hole();
  bool isTrivial() const noexcept { return nodeCount() == 1; }
  NodeId holeNode() const noexcept;

  /// Adopts a representation; throws NotAContext unless it has exactly one ξ-leaf.
  static Context fromRep(std::shared_ptr<const detail::TreeRep> rep);

 private:
  using LabelledTree::LabelledTree;
};

/// Finite, ordered sequence of trees; ε is the empty vector.
using Hedge = std::vector<Tree>;

/// Appends nodes in preorder (a parent before its children, siblings left to
/// right); finish() fills in sizes and ξ bookkeeping and rejects valued
/// interior nodes.
class TreeBuilder {
 public:
  static constexpr std::uint32_t kNoParent = UINT32_MAX;

  std::uint32_t add(const Label& label, std::optional<Value> value = std::nullopt,
                    std::uint32_t parent = kNoParent);
  /// Copies the subtree of src at o below `parent`.
  std::uint32_t copy(const detail::TreeRep& src, std::uint32_t o, std::uint32_t parent);
  /// Copies the subtree of src at o, splicing `replacement` in place of node `target`.
  void copyReplacing(const detail::TreeRep& src, std::uint32_t o, std::uint32_t parent,
                     std::uint32_t target, std::span<const LabelledTree* const> replacement);
  bool empty() const noexcept { return nodes_.empty(); }
  std::shared_ptr<const detail::TreeRep> finish();

 private:
  std::vector<detail::TreeNode> nodes_;
};

// Selectors.
Tree subtree(const Tree& t, NodeId o);
Context contextAt(const Tree& t, NodeId o1, NodeId o2);

// The four substitutions.
Tree substTT(const Tree& t1, NodeId o, const Tree& t2);
Context substTC(const Tree& t1, NodeId o, const Context& c = Context::hole());
Context substCC(const Context& c1, const Context& c2);
Tree substCT(const Context& c, const Tree& t);

// Algebra operators.
Tree labelHedge(const Label& a, const Hedge& h);
Context labelContext(const Label& a, const Context& c);
Context leftExtend(const Hedge& h, const Context& c);
Context rightExtend(const Hedge& h, const Context& c);
/// Tree forms of the extension operators, as used on signature subtrees.
Tree leftExtend(const Hedge& h, const Tree& t);
Tree rightExtend(const Hedge& h, const Tree& t);
Hedge concatHedges(const Hedge& h1, const Hedge& h2);
Tree injectHedge(const Context& c, const Hedge& h);
Context injectContext(const Context& c1, const Context& c2);

/// Equality up to node renaming (child/sibling order, labels, leaf values).
bool treesEqual(const LabelledTree& t1, const LabelledTree& t2);

/// The general subtree relation t1 ⊑ t2: t1 embeds into t2 with child edges and
/// next-sibling edges preserved, so siblings may only be dropped at either end.
bool isSubtreeOf(const LabelledTree& t1, const LabelledTree& t2);

std::string formatPath(const NodePath& path);

}  // namespace rasm

// Copyright 2026 The rasm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rasm/tree.hpp"
#include "rasm/updates.hpp"

namespace rasm {

/// A tree algebra expression over a source tree t: references to subtrees of
/// t, label_hedge, right_extend and literal trees.
class AlgebraTerm {
 public:
  enum class Kind : std::uint8_t { Ref, LabelHedge, RightExtend, Literal };

  /// subtree(t, node at path)
  static AlgebraTerm ref(NodePath path);
  static AlgebraTerm labelHedge(Label label, std::vector<AlgebraTerm> hedge);
  /// right_extend(hedge, base)
  static AlgebraTerm rightExtend(AlgebraTerm base, std::vector<AlgebraTerm> hedge);
  static AlgebraTerm literal(Tree t);

  Kind kind() const noexcept { return node_->kind; }
  const NodePath& path() const { return node_->path; }
  const Label& label() const { return node_->label; }
  /// Children of label_hedge, or the base followed by the hedge for right_extend.
  const std::vector<AlgebraTerm>& operands() const { return node_->operands; }
  const Tree& tree() const { return node_->tree; }

  /// Number of operator applications and references.
  std::size_t size() const;

 private:
  struct Node {
    Kind kind;
    NodePath path;
    Label label{"_"};
    std::vector<AlgebraTerm> operands;
    Tree tree = Tree::leaf(Label("_"));
  };
  explicit AlgebraTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// θ(t)
Tree evaluateAlgebraTerm(const AlgebraTerm& theta, const Tree& t);

/// Prefix notation: `subtree@root.1`, `label_hedge(par, …)`,
/// `right_extend(subtree@root.0, …)`, literal trees in canonical text.
std::string printAlgebraTerm(const AlgebraTerm& theta);

/// θ with θ(t) = t2. Subtrees of t2 that occur in t are reused (largest first,
/// leftmost occurrence); new update/partial nodes and leaves become literals;
/// other nodes are rebuilt with label_hedge. A signature that only grows by
/// appended symbols becomes one right_extend. Throws MalformedProgramTree if
/// either tree is not a program tree and SignatureShrunk if t2 drops a symbol.
AlgebraTerm treeDiffTheta(const Tree& t, const Tree& t2);

/// Shared updates on node sublocations of pgm whose collapse against a state
/// holding t yields the single update (pgm, t2). Operators: tree_replace and
/// tree_append with the node path as first argument.
UpdateMultiset treeDiffUpdates(const Tree& t, const Tree& t2);

}  // namespace rasm
